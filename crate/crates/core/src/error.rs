//! Crate-wide error type.

/// Errors reported by dataset construction, file I/O, and run configuration.
///
/// Contract violations in pure numeric kernels (e.g. refining a rule that
/// covers no positive example) panic instead; only recoverable, input-driven
/// failures surface here.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// A malformed dataset file. `line` is 1-based; `column` is the 1-based
    /// field position within the line (0 when the whole line is at fault).
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A dataset or schema that violates its structural invariants.
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    /// An out-of-range or inconsistent argument (counts, sizes, plans).
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
