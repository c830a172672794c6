//! Semantic redundant-rule elimination, applied once to every learner or
//! windowing output.
//!
//! Low-coverage rules learned from small windows are often subsumed later by
//! more general rules covering the same examples — a situation a syntactic
//! generality test cannot detect. The cleanup is semantic: a rule goes when
//! everything it covers on the training set is covered by the other
//! remaining rules, so the theory classifies every training example exactly
//! as before.

use crate::model::{Dataset, Theory};

/// Removes redundant rules from `theory` with respect to the selected
/// training examples.
///
/// Rules are visited in ascending order of training-set coverage (ties keep
/// the original rule order; zero-coverage rules come first and always go). A
/// rule is deleted iff every training example it covers is covered by at
/// least one other currently remaining rule; deletions take effect
/// immediately. Surviving rules keep their original order.
pub fn remove_redundant_rules(theory: &Theory, data: &Dataset, training: &[usize]) -> Theory {
    let covered: Vec<Vec<usize>> = theory
        .rules
        .iter()
        .map(|rule| {
            training
                .iter()
                .copied()
                .filter(|&i| rule.covers(data.example(i)))
                .collect()
        })
        .collect();

    let mut order: Vec<usize> = (0..theory.rules.len()).collect();
    order.sort_by_key(|&r| (covered[r].len(), r));

    // cover_count[i] = number of remaining rules covering training example i
    let mut cover_count: std::collections::HashMap<usize, usize> =
        std::collections::HashMap::new();
    for cov in &covered {
        for &i in cov {
            *cover_count.entry(i).or_insert(0) += 1;
        }
    }

    let mut removed = vec![false; theory.rules.len()];
    for &r in &order {
        let redundant = covered[r]
            .iter()
            .all(|i| cover_count[i] >= 2);
        if redundant {
            removed[r] = true;
            for &i in &covered[r] {
                *cover_count.get_mut(&i).expect("counted above") -= 1;
            }
        }
    }

    Theory::new(
        theory
            .rules
            .iter()
            .zip(&removed)
            .filter(|(_, &gone)| !gone)
            .map(|(rule, _)| rule.clone())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        Attribute, Condition, ConditionTest, Example, Label, Rule, Schema, Value,
    };
    use proptest::prelude::*;

    fn bool_dataset(rows: &[(Vec<bool>, bool)], width: usize) -> Dataset {
        let attrs = (0..width)
            .map(|i| Attribute::symbolic(format!("a{i}"), vec!["f".into(), "t".into()]).unwrap())
            .collect();
        let schema = Schema::new(attrs).unwrap();
        let examples = rows
            .iter()
            .map(|(bits, pos)| {
                Example::new(
                    bits.iter().map(|&b| Value::Symbolic(b as u32)).collect(),
                    if *pos { Label::Positive } else { Label::Negative },
                )
            })
            .collect();
        Dataset::new(schema, ["pos".into(), "neg".into()], examples).unwrap()
    }

    fn eq(attribute: usize, v: bool) -> Condition {
        Condition {
            attribute,
            test: ConditionTest::Equals(v as u32),
        }
    }

    #[test]
    fn single_rule_theory_is_unchanged() {
        let data = bool_dataset(&[(vec![true], true), (vec![false], false)], 1);
        let theory = Theory::new(vec![Rule::new(vec![eq(0, true)])]);
        let out = remove_redundant_rules(&theory, &data, &data.all_indices());
        assert_eq!(out, theory);
    }

    #[test]
    fn rule_covered_by_union_of_two_others_is_removed() {
        // a2=t implies a0=t or a1=t in this data, so the a2 rule is redundant
        let rows = vec![
            (vec![true, false, true], true),
            (vec![false, true, true], true),
            (vec![true, false, false], true),
            (vec![false, true, false], true),
            (vec![false, false, false], false),
        ];
        let data = bool_dataset(&rows, 3);
        let theory = Theory::new(vec![
            Rule::new(vec![eq(0, true)]),
            Rule::new(vec![eq(1, true)]),
            Rule::new(vec![eq(2, true)]),
        ]);
        let out = remove_redundant_rules(&theory, &data, &data.all_indices());
        assert_eq!(
            out.rules,
            vec![Rule::new(vec![eq(0, true)]), Rule::new(vec![eq(1, true)])]
        );
    }

    #[test]
    fn specific_kings_rule_is_subsumed_by_the_adjacency_rule() {
        // "kings share a square" covers a strict subset of "kings are
        // adjacent or share a square" over the position enumeration
        use crate::data::krk::krk_full_dataset;
        let data = krk_full_dataset();
        let same_square = Rule::new(vec![
            Condition { attribute: 3, test: ConditionTest::Equals(1) },  // files equal
            Condition { attribute: 12, test: ConditionTest::Equals(1) }, // ranks equal
        ]);
        let adjacent = Rule::new(vec![
            Condition { attribute: 4, test: ConditionTest::Equals(1) },  // files adjacent
            Condition { attribute: 13, test: ConditionTest::Equals(1) }, // ranks adjacent
        ]);
        let theory = Theory::new(vec![same_square.clone(), adjacent.clone()]);
        let out = remove_redundant_rules(&theory, &data, &data.all_indices());
        assert_eq!(out.rules, vec![adjacent]);
    }

    #[test]
    fn zero_coverage_rules_always_go() {
        let data = bool_dataset(&[(vec![true], true)], 1);
        let theory = Theory::new(vec![
            Rule::new(vec![eq(0, false)]), // covers nothing
            Rule::new(vec![eq(0, true)]),
        ]);
        let out = remove_redundant_rules(&theory, &data, &data.all_indices());
        assert_eq!(out.rules, vec![Rule::new(vec![eq(0, true)])]);
    }

    proptest! {
        #[test]
        fn postprocess_preserves_training_classification_and_is_idempotent(
            rows in proptest::collection::vec(
                (proptest::collection::vec(any::<bool>(), 3), any::<bool>()), 1..30),
            rule_specs in proptest::collection::vec(
                proptest::collection::vec((0usize..3, any::<bool>()), 0..3), 0..6),
        ) {
            let data = bool_dataset(&rows, 3);
            let theory = Theory::new(rule_specs.iter().map(|conds| {
                Rule::new(conds.iter().map(|&(a, v)| eq(a, v)).collect())
            }).collect());
            let idx = data.all_indices();
            let once = remove_redundant_rules(&theory, &data, &idx);
            prop_assert!(once.rules.len() <= theory.rules.len());
            for ex in data.examples() {
                prop_assert_eq!(theory.classify(ex), once.classify(ex));
            }
            let twice = remove_redundant_rules(&once, &data, &idx);
            prop_assert_eq!(once, twice);
        }
    }
}
