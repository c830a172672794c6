//! Seeded subset selection.

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::model::Dataset;

/// Draws a uniform sample of `size` examples without replacement and returns
/// `(subset, remainder)` as datasets. Both preserve the original example
/// order and are disjoint by position. Deterministic given `seed`.
pub fn sample_split(data: &Dataset, size: usize, seed: u64) -> Result<(Dataset, Dataset)> {
    if size < 1 || size > data.len() {
        return Err(Error::InvalidArgument(format!(
            "subset size {size} outside 1..={}",
            data.len()
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut chosen = rand::seq::index::sample(&mut rng, data.len(), size).into_vec();
    chosen.sort_unstable();
    let mut in_subset = vec![false; data.len()];
    for &i in &chosen {
        in_subset[i] = true;
    }
    let rest: Vec<usize> = (0..data.len()).filter(|&i| !in_subset[i]).collect();
    Ok((data.subset(&chosen), data.subset(&rest)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::krk::generate_krk;

    #[test]
    fn full_size_returns_whole_set_and_empty_rest() {
        let data = generate_krk(50, 1, false).unwrap();
        let (subset, rest) = sample_split(&data, 50, 2).unwrap();
        assert_eq!(subset, data);
        assert!(rest.is_empty());
    }

    #[test]
    fn split_is_deterministic_and_partitions() {
        let data = generate_krk(100, 3, false).unwrap();
        let (a1, r1) = sample_split(&data, 30, 9).unwrap();
        let (a2, r2) = sample_split(&data, 30, 9).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(r1, r2);
        assert_eq!(a1.len() + r1.len(), data.len());
    }

    #[test]
    fn size_bounds_are_enforced() {
        let data = generate_krk(10, 1, false).unwrap();
        assert!(sample_split(&data, 0, 1).is_err());
        assert!(sample_split(&data, 11, 1).is_err());
    }

    #[test]
    fn selection_is_uniform_chi_square() {
        use crate::model::{Attribute, Dataset, Example, Label, Schema, Value};
        // ten distinguishable examples (value = index); each should land in a
        // 4-element subset with frequency ~ 0.4 over many seeds; chi-square
        // with 9 dof at 0.01
        let schema = Schema::new(vec![Attribute::numeric("id").unwrap()]).unwrap();
        let examples = (0..10)
            .map(|i| Example::new(vec![Value::Numeric(i as f64)], Label::Positive))
            .collect();
        let data = Dataset::new(schema, ["p".into(), "n".into()], examples).unwrap();

        let trials = 2000u64;
        let mut counts = [0usize; 10];
        for seed in 0..trials {
            let (subset, _) = sample_split(&data, 4, seed).unwrap();
            for ex in subset.examples() {
                let Value::Numeric(id) = ex.values[0] else { unreachable!() };
                counts[id as usize] += 1;
            }
        }
        let expected = trials as f64 * 4.0 / 10.0;
        let stat: f64 = counts
            .iter()
            .map(|&o| (o as f64 - expected).powi(2) / expected)
            .sum();
        assert!(
            stat < 21.666,
            "chi-square statistic {stat} exceeds the 0.01 critical value for 9 dof"
        );
    }
}
