//! Conditional-population-entropy redundancy estimate for purely symbolic
//! datasets.
//!
//! The CPE sums, per class and attribute, the entropy of the attribute's
//! value distribution within that class, weighted by the class prior:
//!
//! ```text
//! CPE = - sum_i p(c_i) * sum_a sum_v p(x_{a,v} | c_i) * log2 p(x_{a,v} | c_i)
//! ```
//!
//! Normalizing by its maximum (uniform conditionals) gives a redundancy score
//! in `[0, 1]`, 1 meaning high redundancy. Known blind spot, kept
//! deliberately: duplicating every example leaves the estimate unchanged.

use crate::error::{Error, Result};
use crate::model::{AttributeKind, Dataset, Label, Value};

/// Conditional population entropy and its normalized redundancy score, all in
/// bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedundancyReport {
    pub cpe: f64,
    /// The maximum the CPE can assume: `sum_a log2 n_{v_a}` over declared
    /// domain sizes.
    pub max_cpe: f64,
    /// `1 - cpe / max_cpe`, clamped into `[0, 1]`.
    pub redundancy: f64,
}

/// Computes the redundancy report for a dataset of symbolic attributes.
///
/// Probabilities are empirical relative frequencies; `0 * log 0` terms
/// contribute nothing. Declared-but-unobserved values still count toward the
/// normalization denominator. Datasets with numeric attributes are rejected
/// (no straightforward value-frequency treatment exists for them), as are
/// empty datasets (class priors would be undefined).
pub fn compute_redundancy(data: &Dataset) -> Result<RedundancyReport> {
    if data.is_empty() {
        return Err(Error::InvalidArgument(
            "redundancy of an empty dataset is undefined".into(),
        ));
    }
    let domain_sizes: Vec<usize> = data
        .schema()
        .attributes()
        .iter()
        .map(|a| match &a.kind {
            AttributeKind::Symbolic { values } => Ok(values.len()),
            AttributeKind::Numeric => Err(Error::InvalidArgument(format!(
                "attribute {:?} is numeric; the redundancy estimate only handles symbolic \
                 attributes",
                a.name
            ))),
        })
        .collect::<Result<_>>()?;

    let n = data.len() as f64;
    let mut cpe = 0.0;
    for class in [Label::Positive, Label::Negative] {
        let members: Vec<&crate::model::Example> = data
            .examples()
            .iter()
            .filter(|ex| ex.label == class)
            .collect();
        if members.is_empty() {
            continue; // zero prior contributes nothing
        }
        let prior = members.len() as f64 / n;
        let m = members.len() as f64;
        for (attr_idx, &size) in domain_sizes.iter().enumerate() {
            let mut counts = vec![0usize; size];
            for ex in &members {
                match ex.values[attr_idx] {
                    Value::Symbolic(v) => counts[v as usize] += 1,
                    Value::Numeric(_) => unreachable!("numeric attributes rejected above"),
                }
            }
            for &c in &counts {
                if c > 0 {
                    let p = c as f64 / m;
                    cpe -= prior * p * p.log2();
                }
            }
        }
    }

    let max_cpe: f64 = domain_sizes.iter().map(|&s| (s as f64).log2()).sum();
    let redundancy = if max_cpe == 0.0 {
        // every attribute is single-valued: the data carries no attribute
        // information at all
        1.0
    } else {
        (1.0 - cpe / max_cpe).clamp(0.0, 1.0)
    };
    Ok(RedundancyReport {
        cpe,
        max_cpe,
        redundancy,
    })
}
