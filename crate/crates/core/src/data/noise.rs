//! Artificial class noise.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::model::{Dataset, Label};

/// Noise parameters: each example is independently selected with probability
/// `level`, and a selected example's label is redrawn uniformly from both
/// classes — so roughly half the selected labels actually flip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub level: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(level: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&level) {
            return Err(Error::InvalidArgument(format!(
                "noise level must lie in [0, 1], got {level}"
            )));
        }
        Ok(NoiseSpec { level, seed })
    }
}

/// A copy of the dataset with class noise injected. Example count, order, and
/// feature values are untouched; only labels change. Deterministic given the
/// spec's seed.
pub fn inject_noise(data: &Dataset, spec: &NoiseSpec) -> Dataset {
    let mut rng = StdRng::seed_from_u64(spec.seed);
    let mut examples = data.examples().to_vec();
    for ex in &mut examples {
        if rng.gen::<f64>() < spec.level {
            ex.label = if rng.gen::<bool>() {
                Label::Positive
            } else {
                Label::Negative
            };
        }
    }
    Dataset::new(
        data.schema().clone(),
        data.class_names().clone(),
        examples,
    )
    .expect("noise preserves schema conformance")
}
