//! King-rook-king illegality: a verifiable synthetic domain.
//!
//! A position places the white king, white rook, and black king anywhere on
//! the board (coincidences allowed — detecting them is part of the concept),
//! giving 8^6 = 262,144 positions. Illegality is decided by seven reference
//! rule bodies over coordinate comparisons; the propositional encoding
//! exposes 18 boolean features (equal / adjacent / less-than for each
//! same-dimension coordinate pair) from which the concept is exactly
//! learnable.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::model::{Attribute, Dataset, Example, Label, Schema, Value};

/// Total number of distinct positions: 8^6.
pub const POSITION_COUNT: usize = 262_144;

/// Number of reference rule bodies.
pub const RULE_COUNT: usize = 7;

/// A board position: file/rank coordinates in 1..=8 for white king, white
/// rook, and black king.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KrkPosition {
    pub wk_file: u8,
    pub wk_rank: u8,
    pub wr_file: u8,
    pub wr_rank: u8,
    pub bk_file: u8,
    pub bk_rank: u8,
}

impl KrkPosition {
    pub fn new(
        wk_file: u8,
        wk_rank: u8,
        wr_file: u8,
        wr_rank: u8,
        bk_file: u8,
        bk_rank: u8,
    ) -> Result<Self> {
        for c in [wk_file, wk_rank, wr_file, wr_rank, bk_file, bk_rank] {
            if !(1..=8).contains(&c) {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {c} outside 1..=8"
                )));
            }
        }
        Ok(KrkPosition {
            wk_file,
            wk_rank,
            wr_file,
            wr_rank,
            bk_file,
            bk_rank,
        })
    }

    /// Decodes position number `index` (0..262,144) as base-8 digits, most
    /// significant digit = white-king file.
    pub fn from_index(index: usize) -> Self {
        assert!(index < POSITION_COUNT, "position index out of range");
        let digit = |shift: u32| -> u8 { ((index >> (3 * shift)) & 7) as u8 + 1 };
        KrkPosition {
            wk_file: digit(5),
            wk_rank: digit(4),
            wr_file: digit(3),
            wr_rank: digit(2),
            bk_file: digit(1),
            bk_rank: digit(0),
        }
    }
}

fn adjacent(x: u8, y: u8) -> bool {
    x.abs_diff(y) <= 1
}

/// Whether `w` lies strictly between `p` and `q` (in either order).
fn strictly_between(w: u8, p: u8, q: u8) -> bool {
    p.min(q) < w && w < p.max(q)
}

/// The seven reference rule bodies, in listed order. Adjacency includes
/// equality.
fn rule_body(rule: usize, pos: &KrkPosition) -> bool {
    let KrkPosition {
        wk_file: a,
        wk_rank: b,
        wr_file: c,
        wr_rank: d,
        bk_file: e,
        bk_rank: f,
    } = *pos;
    match rule {
        0 => a == c && b == d,                              // king on the rook's square
        1 => c == e && d == f,                              // rook on the black king's square
        2 => adjacent(a, e) && adjacent(b, f),              // kings adjacent (or same square)
        3 => c == e && a != c,                              // rook attacks along the file
        4 => d == f && b != d,                              // rook attacks along the rank
        5 => c == e && !strictly_between(b, d, f),          // shared file, king not blocking
        6 => d == f && !strictly_between(a, c, e),          // shared rank, king not blocking
        _ => panic!("rule index out of range"),
    }
}

/// True iff any of the seven rule bodies holds.
pub fn krk_illegal(pos: &KrkPosition) -> bool {
    (0..RULE_COUNT).any(|r| rule_body(r, pos))
}

/// Index of the first rule body (in listed order) covering the position, if
/// any — the basis of sequential first-match coverage counting.
pub fn first_matching_rule(pos: &KrkPosition) -> Option<usize> {
    (0..RULE_COUNT).find(|&r| rule_body(r, pos))
}

/// The six same-dimension coordinate pairs, each encoded by three features.
const PAIR_NAMES: [(&str, &str); 6] = [
    ("wkf", "wrf"),
    ("wkf", "bkf"),
    ("wrf", "bkf"),
    ("wkr", "wrr"),
    ("wkr", "bkr"),
    ("wrr", "bkr"),
];

/// The 18-feature propositional schema: for each coordinate pair, `eq`,
/// `adj` (difference at most 1), and `lt` (first strictly less than second),
/// each a boolean symbolic attribute with values `false`/`true`.
pub fn krk_schema() -> Schema {
    let mut attrs = Vec::with_capacity(18);
    for (x, y) in PAIR_NAMES {
        for rel in ["eq", "adj", "lt"] {
            attrs.push(
                Attribute::symbolic(
                    format!("{rel}_{x}_{y}"),
                    vec!["false".into(), "true".into()],
                )
                .expect("static schema"),
            );
        }
    }
    Schema::new(attrs).expect("static schema")
}

/// Positive/negative class names for the generated datasets.
pub fn krk_class_names() -> [String; 2] {
    ["illegal".into(), "legal".into()]
}

fn pair_coordinates(pos: &KrkPosition) -> [(u8, u8); 6] {
    [
        (pos.wk_file, pos.wr_file),
        (pos.wk_file, pos.bk_file),
        (pos.wr_file, pos.bk_file),
        (pos.wk_rank, pos.wr_rank),
        (pos.wk_rank, pos.bk_rank),
        (pos.wr_rank, pos.bk_rank),
    ]
}

/// Encodes a position over the 18-feature schema; the label maps illegal to
/// positive.
pub fn krk_encode(pos: &KrkPosition) -> Example {
    let mut values = Vec::with_capacity(18);
    for (x, y) in pair_coordinates(pos) {
        values.push(Value::Symbolic((x == y) as u32));
        values.push(Value::Symbolic(adjacent(x, y) as u32));
        values.push(Value::Symbolic((x < y) as u32));
    }
    let label = if krk_illegal(pos) {
        Label::Positive
    } else {
        Label::Negative
    };
    Example::new(values, label)
}

/// A dataset of `count` uniformly sampled positions, encoded and labeled.
/// Without replacement, `count` must stay within the 262,144 distinct
/// positions; with replacement any positive count works. Deterministic given
/// `seed`.
pub fn generate_krk(count: usize, seed: u64, with_replacement: bool) -> Result<Dataset> {
    if count < 1 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    if !with_replacement && count > POSITION_COUNT {
        return Err(Error::InvalidArgument(format!(
            "count {count} exceeds the {POSITION_COUNT} distinct positions; \
             pass --with-replacement to sample more"
        )));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let examples: Vec<Example> = if with_replacement {
        (0..count)
            .map(|_| krk_encode(&KrkPosition::from_index(rng.gen_range(0..POSITION_COUNT))))
            .collect()
    } else {
        rand::seq::index::sample(&mut rng, POSITION_COUNT, count)
            .into_iter()
            .map(|i| krk_encode(&KrkPosition::from_index(i)))
            .collect()
    };
    Dataset::new(krk_schema(), krk_class_names(), examples)
}

/// The full enumeration as a dataset, positions in index order.
pub fn krk_full_dataset() -> Dataset {
    let examples = (0..POSITION_COUNT)
        .map(|i| krk_encode(&KrkPosition::from_index(i)))
        .collect();
    Dataset::new(krk_schema(), krk_class_names(), examples).expect("static encoding")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{accuracy, Condition, ConditionTest, Rule, Theory};
    use std::collections::HashMap;

    #[test]
    fn coincident_pieces_are_illegal() {
        let pos = KrkPosition::new(1, 1, 1, 1, 5, 5).unwrap();
        assert!(krk_illegal(&pos));
        assert_eq!(first_matching_rule(&pos), Some(0));
    }

    #[test]
    fn rook_on_black_king_square() {
        let pos = KrkPosition::new(4, 4, 7, 2, 7, 2).unwrap();
        assert!(krk_illegal(&pos));
    }

    #[test]
    fn far_apart_pieces_are_legal() {
        // a1 king, h8 rook, c4 black king: no body fires
        let pos = KrkPosition::new(1, 1, 8, 8, 3, 4).unwrap();
        assert!(!krk_illegal(&pos));
        assert_eq!(first_matching_rule(&pos), None);
    }

    #[test]
    fn coordinates_are_validated() {
        assert!(KrkPosition::new(0, 1, 1, 1, 1, 1).is_err());
        assert!(KrkPosition::new(1, 1, 1, 1, 1, 9).is_err());
    }

    #[test]
    fn encode_all_pieces_on_one_square() {
        let pos = KrkPosition::new(1, 1, 1, 1, 1, 1).unwrap();
        let ex = krk_encode(&pos);
        for (i, v) in ex.values.iter().enumerate() {
            let expected = match i % 3 {
                0 => 1, // eq
                1 => 1, // adj
                _ => 0, // lt
            };
            assert_eq!(*v, Value::Symbolic(expected), "feature {i}");
        }
        assert_eq!(ex.label, Label::Positive);
    }

    #[test]
    fn encode_file_pair_relations() {
        // wk file 1 vs wr file 3: not equal, not adjacent, strictly less
        let pos = KrkPosition::new(1, 5, 3, 7, 6, 2).unwrap();
        let ex = krk_encode(&pos);
        assert_eq!(ex.values[0], Value::Symbolic(0)); // eq_wkf_wrf
        assert_eq!(ex.values[1], Value::Symbolic(0)); // adj_wkf_wrf
        assert_eq!(ex.values[2], Value::Symbolic(1)); // lt_wkf_wrf
    }

    /// The reference theory hand-translated onto the 18 features. The two
    /// blocking rules each split into strict halves; their boundary cases are
    /// absorbed by the coincidence and adjacency rules.
    fn propositional_reference_theory() -> Theory {
        let eq = |attr: usize, v: bool| Condition {
            attribute: attr,
            test: ConditionTest::Equals(v as u32),
        };
        // feature layout: pair k occupies attributes 3k (eq), 3k+1 (adj), 3k+2 (lt)
        // pairs: 0 (wkf,wrf), 1 (wkf,bkf), 2 (wrf,bkf), 3 (wkr,wrr), 4 (wkr,bkr), 5 (wrr,bkr)
        const EQ_AC: usize = 0;
        const LT_AC: usize = 2;
        const EQ_AE: usize = 3;
        const ADJ_AE: usize = 4;
        const LT_AE: usize = 5;
        const EQ_CE: usize = 6;
        const EQ_BD: usize = 9;
        const LT_BD: usize = 11;
        const ADJ_BF: usize = 13;
        const LT_BF: usize = 14;
        const EQ_BF: usize = 12;
        const EQ_DF: usize = 15;
        Theory::new(vec![
            Rule::new(vec![eq(EQ_AC, true), eq(EQ_BD, true)]),
            Rule::new(vec![eq(EQ_CE, true), eq(EQ_DF, true)]),
            Rule::new(vec![eq(ADJ_AE, true), eq(ADJ_BF, true)]),
            Rule::new(vec![eq(EQ_CE, true), eq(EQ_AC, false)]),
            Rule::new(vec![eq(EQ_DF, true), eq(EQ_BD, false)]),
            Rule::new(vec![eq(EQ_CE, true), eq(LT_BD, true), eq(LT_BF, true)]),
            Rule::new(vec![
                eq(EQ_CE, true),
                eq(LT_BD, false),
                eq(EQ_BD, false),
                eq(LT_BF, false),
                eq(EQ_BF, false),
            ]),
            Rule::new(vec![eq(EQ_DF, true), eq(LT_AC, true), eq(LT_AE, true)]),
            Rule::new(vec![
                eq(EQ_DF, true),
                eq(LT_AC, false),
                eq(EQ_AC, false),
                eq(LT_AE, false),
                eq(EQ_AE, false),
            ]),
        ])
    }

    #[test]
    fn reference_rule_covers_encoded_coincidence() {
        // king on the rook's square: the first reference rule in feature form
        let rule = propositional_reference_theory().rules[0].clone();
        let ex = krk_encode(&KrkPosition::new(2, 3, 2, 3, 7, 7).unwrap());
        assert!(rule.covers(&ex));
    }

    #[test]
    fn propositional_theory_is_exact_on_the_full_enumeration() {
        let data = krk_full_dataset();
        let theory = propositional_reference_theory();
        assert_eq!(accuracy(&theory, data.examples()), 1.0);
    }

    #[test]
    fn feature_collisions_never_conflict_on_labels() {
        // many positions share a feature vector; none may disagree on the label
        let mut seen: HashMap<u32, Label> = HashMap::new();
        let mut collisions = 0usize;
        for i in 0..POSITION_COUNT {
            let ex = krk_encode(&KrkPosition::from_index(i));
            let mut key = 0u32;
            for (bit, v) in ex.values.iter().enumerate() {
                if *v == Value::Symbolic(1) {
                    key |= 1 << bit;
                }
            }
            match seen.get(&key) {
                Some(&label) => {
                    collisions += 1;
                    assert_eq!(label, ex.label, "conflicting labels for one feature vector");
                }
                None => {
                    seen.insert(key, ex.label);
                }
            }
        }
        assert!(collisions > 0, "the encoding is expected to collapse positions");
    }

    #[test]
    fn generation_is_deterministic_and_bounded() {
        let a = generate_krk(500, 42, false).unwrap();
        let b = generate_krk(500, 42, false).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_krk(500, 43, false).unwrap());
        assert!(generate_krk(0, 1, false).is_err());
        assert!(generate_krk(POSITION_COUNT + 1, 1, false).is_err());
        // with replacement the distinct-position cap does not apply
        let small = generate_krk(10, 1, true).unwrap();
        assert_eq!(small.len(), 10);
    }

    #[test]
    fn full_count_without_replacement_is_the_enumeration() {
        let sampled = generate_krk(POSITION_COUNT, 9, false).unwrap();
        let full = krk_full_dataset();
        // same multiset of examples: compare sorted feature keys + labels
        let key = |ex: &Example| -> (Vec<u32>, bool) {
            (
                ex.values
                    .iter()
                    .map(|v| match v {
                        Value::Symbolic(x) => *x,
                        Value::Numeric(_) => unreachable!(),
                    })
                    .collect(),
                ex.label.is_positive(),
            )
        };
        let mut a: Vec<_> = sampled.examples().iter().map(key).collect();
        let mut b: Vec<_> = full.examples().iter().map(key).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_illegal_fraction_is_near_the_enumerated_rate() {
        let data = generate_krk(10_000, 7, false).unwrap();
        let frac = data.positive_indices().len() as f64 / data.len() as f64;
        assert!(
            (frac - 0.3318).abs() <= 0.015,
            "illegal fraction {frac} outside the binomial band"
        );
    }

    #[test]
    fn coincidence_rule_covers_4096_enumeration_positions() {
        use crate::model::coverage;
        let rule = propositional_reference_theory().rules[0].clone();
        let stats = coverage(&rule, krk_full_dataset().examples());
        assert_eq!(stats.total(), 4_096);
        assert_eq!(stats.negatives, 0);
    }
}
