//! The two base induction algorithms the windowing strategies wrap: a plain
//! consistent separate-and-conquer learner with no noise handling, and a
//! grow/prune learner that simplifies each rule on a held-out third of its
//! training examples and stops once the best prunable rule is no better than
//! chance.

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::model::{
    coverage_indexed, AttributeKind, Condition, ConditionTest, CoverageStats, Dataset, Rule,
    Theory,
};
use crate::seeds;

/// One scored refinement candidate: coverage before and after adding the
/// condition, and the resulting information gain in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainEvaluation {
    pub base: CoverageStats,
    pub refined: CoverageStats,
    pub gain: f64,
}

/// FOIL information gain of refining a rule from `base` to `refined`
/// coverage, in bits:
///
/// ```text
/// gain = p1 * (log2(p1 / (p1 + n1)) - log2(p0 / (p0 + n0)))
/// ```
///
/// A refinement that kills the rule (`p1 = 0`) scores 0 so it can never win.
///
/// Panics if the rule under refinement covers no positive example.
pub fn foil_gain(base: CoverageStats, refined: CoverageStats) -> f64 {
    assert!(
        base.positives > 0,
        "refining a rule that covers no positive example"
    );
    if refined.positives == 0 {
        return 0.0;
    }
    let p1 = refined.positives as f64;
    p1 * (refined.precision().log2() - base.precision().log2())
}

/// All refinement conditions worth considering for `rule` over the given
/// examples: every symbolic attribute-value equality test, plus per numeric
/// attribute a `<=`/`>` pair at each midpoint between adjacent distinct
/// sorted values whose class composition differs. Conditions already present
/// in the rule are excluded.
///
/// Enumeration order is fixed (schema order, declared values in order,
/// thresholds ascending, `<=` before `>`) so that gain ties break
/// deterministically.
pub fn candidate_conditions(data: &Dataset, examples: &[usize], rule: &Rule) -> Vec<Condition> {
    let mut out = Vec::new();
    for (attr_idx, attr) in data.schema().attributes().iter().enumerate() {
        match &attr.kind {
            AttributeKind::Symbolic { values } => {
                for v in 0..values.len() as u32 {
                    let cond = Condition {
                        attribute: attr_idx,
                        test: ConditionTest::Equals(v),
                    };
                    if !rule.conditions.contains(&cond) {
                        out.push(cond);
                    }
                }
            }
            AttributeKind::Numeric => {
                for t in class_boundary_thresholds(data, examples, attr_idx) {
                    for test in [ConditionTest::LessOrEqual(t), ConditionTest::Greater(t)] {
                        let cond = Condition {
                            attribute: attr_idx,
                            test,
                        };
                        if !rule.conditions.contains(&cond) {
                            out.push(cond);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Midpoints between adjacent distinct sorted values of a numeric attribute
/// where the class composition changes, ascending. Adjacent groups that are
/// both pure and same-class yield no cut point.
fn class_boundary_thresholds(data: &Dataset, examples: &[usize], attr: usize) -> Vec<f64> {
    let mut pairs: Vec<(f64, bool)> = examples
        .iter()
        .map(|&i| {
            let ex = data.example(i);
            let x = match ex.values[attr] {
                crate::model::Value::Numeric(x) => x,
                _ => panic!("threshold candidates on a symbolic attribute"),
            };
            (x, ex.label.is_positive())
        })
        .collect();
    pairs.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("non-finite attribute value"));

    // collapse to distinct values with (has_pos, has_neg) flags
    let mut groups: Vec<(f64, bool, bool)> = Vec::new();
    for (x, pos) in pairs {
        match groups.last_mut() {
            Some((v, has_pos, has_neg)) if *v == x => {
                *has_pos |= pos;
                *has_neg |= !pos;
            }
            _ => groups.push((x, pos, !pos)),
        }
    }

    let mut thresholds = Vec::new();
    for w in groups.windows(2) {
        let (_, lp, ln) = w[0];
        let (_, rp, rn) = w[1];
        let both_pure_same = (lp && !ln && rp && !rn) || (!lp && ln && !rp && rn);
        if !both_pure_same {
            thresholds.push((w[0].0 + w[1].0) / 2.0);
        }
    }
    thresholds
}

/// Grows one rule by greedily adding the highest-gain condition, restricted
/// to candidates that keep at least one positive covered and strictly reduce
/// the covered negatives. Stops when the rule is consistent (covers zero
/// negatives) or no candidate qualifies — the latter only happens on
/// contradictory data, where the rule is returned as-is.
///
/// The returned rule always covers at least one of the input positives.
/// Panics if `positives` is empty.
pub fn grow_rule_dos(data: &Dataset, positives: &[usize], negatives: &[usize]) -> Rule {
    assert!(!positives.is_empty(), "growing a rule without positive examples");
    let mut covered_pos: Vec<usize> = positives.to_vec();
    let mut covered_neg: Vec<usize> = negatives.to_vec();
    let mut rule = Rule::empty();

    while !covered_neg.is_empty() {
        let base = CoverageStats::new(covered_pos.len(), covered_neg.len());
        let covered_all: Vec<usize> = covered_pos
            .iter()
            .chain(covered_neg.iter())
            .copied()
            .collect();
        let candidates = candidate_conditions(data, &covered_all, &rule);

        let mut best: Option<(GainEvaluation, Condition)> = None;
        for cond in candidates {
            let p1 = covered_pos
                .iter()
                .filter(|&&i| cond.holds(data.example(i)))
                .count();
            if p1 == 0 {
                continue;
            }
            let n1 = covered_neg
                .iter()
                .filter(|&&i| cond.holds(data.example(i)))
                .count();
            if n1 >= base.negatives {
                continue;
            }
            let refined = CoverageStats::new(p1, n1);
            let eval = GainEvaluation {
                base,
                refined,
                gain: foil_gain(base, refined),
            };
            // strict > keeps the earliest-enumerated candidate on ties
            if best.is_none_or(|(b, _)| eval.gain > b.gain) {
                best = Some((eval, cond));
            }
        }

        let Some((_, cond)) = best else { break };
        covered_pos.retain(|&i| cond.holds(data.example(i)));
        covered_neg.retain(|&i| cond.holds(data.example(i)));
        rule.conditions.push(cond);
    }
    rule
}

/// Plain separate-and-conquer induction: grow a consistent rule, remove the
/// positives it covers, repeat until none remain. On contradiction-free data
/// the result is complete and consistent on its training examples.
///
/// Contradictory data makes the grown rule cover negatives; such rules are
/// not added, and the positives they cover are dropped with a warning (they
/// are indistinguishable from negatives).
pub fn induce_dos(data: &Dataset, training: &[usize]) -> Theory {
    let mut remaining_pos: Vec<usize> = training
        .iter()
        .copied()
        .filter(|&i| data.example(i).label.is_positive())
        .collect();
    let negatives: Vec<usize> = training
        .iter()
        .copied()
        .filter(|&i| !data.example(i).label.is_positive())
        .collect();

    let mut rules = Vec::new();
    while !remaining_pos.is_empty() {
        let rule = grow_rule_dos(data, &remaining_pos, &negatives);
        let covers_negative = negatives.iter().any(|&i| rule.covers(data.example(i)));
        let before = remaining_pos.len();
        remaining_pos.retain(|&i| !rule.covers(data.example(i)));
        debug_assert!(remaining_pos.len() < before);
        if covers_negative {
            log::warn!(
                "dropping {} positive example(s) covered only by an inconsistent rule \
                 (contradictory training data)",
                before - remaining_pos.len()
            );
        } else {
            rules.push(rule);
        }
    }
    Theory::new(rules)
}

/// A random 2/3 : 1/3 partition of an example index set, used to grow and
/// then prune each rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowPruneSplit {
    pub grow: Vec<usize>,
    pub prune: Vec<usize>,
    pub seed: u64,
}

/// Splits `examples` into a growing set of `round(2/3 * N)` elements and a
/// pruning set holding the rest, uniformly at random. Both halves preserve
/// the input order.
pub fn grow_prune_split(examples: &[usize], seed: u64) -> GrowPruneSplit {
    let n = examples.len();
    let grow_len = ((2.0 * n as f64) / 3.0).round() as usize;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut chosen = rand::seq::index::sample(&mut rng, n, grow_len).into_vec();
    chosen.sort_unstable();
    let mut grow = Vec::with_capacity(grow_len);
    let mut prune = Vec::with_capacity(n - grow_len);
    let mut next = chosen.iter().peekable();
    for (pos, &idx) in examples.iter().enumerate() {
        if next.peek() == Some(&&pos) {
            grow.push(idx);
            next.next();
        } else {
            prune.push(idx);
        }
    }
    GrowPruneSplit { grow, prune, seed }
}

/// Pruning-set value of a rule: `(p - n) / (p + n)`, or -1.0 when the rule
/// covers nothing there (a deletion that empties the coverage never helps).
fn prune_value(stats: CoverageStats) -> f64 {
    if stats.total() == 0 {
        return -1.0;
    }
    (stats.positives as f64 - stats.negatives as f64) / stats.total() as f64
}

/// Greedily deletes single conditions (any position, not just a suffix) while
/// the pruning-set value does not decrease.
fn prune_rule(data: &Dataset, mut rule: Rule, prune_set: &[usize]) -> Rule {
    let mut current_value = prune_value(coverage_indexed(&rule, data, prune_set));
    while !rule.conditions.is_empty() {
        let mut best: Option<(f64, usize)> = None;
        for i in 0..rule.conditions.len() {
            let mut candidate = rule.clone();
            candidate.conditions.remove(i);
            let v = prune_value(coverage_indexed(&candidate, data, prune_set));
            if best.is_none_or(|(bv, _)| v > bv) {
                best = Some((v, i));
            }
        }
        match best {
            Some((v, i)) if v >= current_value => {
                rule.conditions.remove(i);
                current_value = v;
            }
            _ => break,
        }
    }
    rule
}

/// Grow/prune induction: before each rule the remaining examples are
/// re-split 2/3 : 1/3; the rule is grown to consistency on the growing set,
/// simplified on the pruning set, and accepted only while its pruning-set
/// precision exceeds 0.5. Accepted rules remove all covered examples (both
/// classes) from the remaining set.
///
/// Deterministic given the dataset order and `seed`.
pub fn induce_irip(data: &Dataset, training: &[usize], seed: u64) -> Theory {
    let mut remaining: Vec<usize> = training.to_vec();
    let mut rules = Vec::new();
    let mut round: u64 = 0;

    loop {
        if !remaining.iter().any(|&i| data.example(i).label.is_positive()) {
            break;
        }
        let split = grow_prune_split(&remaining, seeds::derive(seed, round));
        round += 1;

        let grow_pos: Vec<usize> = split
            .grow
            .iter()
            .copied()
            .filter(|&i| data.example(i).label.is_positive())
            .collect();
        if grow_pos.is_empty() {
            break;
        }
        let grow_neg: Vec<usize> = split
            .grow
            .iter()
            .copied()
            .filter(|&i| !data.example(i).label.is_positive())
            .collect();

        let grown = grow_rule_dos(data, &grow_pos, &grow_neg);
        let pruned = prune_rule(data, grown, &split.prune);

        let prune_stats = coverage_indexed(&pruned, data, &split.prune);
        let precision = if prune_stats.total() == 0 {
            0.0
        } else {
            prune_stats.precision()
        };
        if precision <= 0.5 {
            break;
        }

        remaining.retain(|&i| !pruned.covers(data.example(i)));
        rules.push(pruned);
    }
    Theory::new(rules)
}

/// A base learner the windowing strategies can wrap. Implementations must be
/// deterministic given their construction seed and the call sequence.
pub trait Learner {
    fn induce(&mut self, data: &Dataset, window: &[usize]) -> Theory;
}

/// The consistent separate-and-conquer learner. Stateless.
#[derive(Debug, Clone, Copy, Default)]
pub struct DosLearner;

impl Learner for DosLearner {
    fn induce(&mut self, data: &Dataset, window: &[usize]) -> Theory {
        induce_dos(data, window)
    }
}

/// The grow/prune learner. Each `induce` call uses a fresh seed derived from
/// the construction seed and a call counter, so repeated windowing iterations
/// get independent internal splits while the whole run stays reproducible.
#[derive(Debug, Clone)]
pub struct IripLearner {
    seed: u64,
    calls: u64,
}

impl IripLearner {
    pub fn new(seed: u64) -> Self {
        IripLearner { seed, calls: 0 }
    }
}

impl Learner for IripLearner {
    fn induce(&mut self, data: &Dataset, window: &[usize]) -> Theory {
        let call_seed = seeds::derive(self.seed, self.calls);
        self.calls += 1;
        induce_irip(data, window, call_seed)
    }
}
