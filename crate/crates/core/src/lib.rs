//! Separate-and-conquer rule induction with adaptive subsampling.
//!
//! The crate implements two binary rule learners — a plain consistent
//! covering learner (`dos`) and a grow/prune learner (`irip`) — together with
//! three windowing meta-strategies that train them on a small, adaptively
//! grown subset of the data instead of the full training set. It also ships
//! a conditional-entropy redundancy estimate for predicting when windowing
//! pays off, a verifiable king-rook-king dataset generator, class-noise
//! injection, and an experiment harness producing learning-curve tables.
//!
//! Everything stochastic is seeded and reproducible: a single base seed
//! determines subset selection, window contents, internal learner splits,
//! and noise - byte for byte across runs.

pub mod bench;
pub mod data;
pub mod error;
pub mod learners;
pub mod model;
pub mod postprocess;
pub mod redundancy;
pub mod seeds;
pub mod windowing;

pub use error::{Error, Result};
pub use model::{
    accuracy, coverage, coverage_indexed, Attribute, AttributeKind, Condition, ConditionTest,
    CoverageStats, Dataset, Example, Label, Rule, Schema, Theory, Value,
};
