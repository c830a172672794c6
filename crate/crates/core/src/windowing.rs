//! The three windowing meta-strategies around a base learner.
//!
//! All three start from a small random window, learn, and grow the window
//! with examples the current theory handles badly:
//!
//! * **basic** — adds misclassified examples (up to `max_inc_size` per
//!   iteration) until the learned theory survives a full scan.
//! * **integrative** — additionally moves rules that covered no negative
//!   during the testing phase into a retained set and removes their covered
//!   examples from the window, so good rules are never re-learned.
//! * **noise-tolerant** — replaces the consistency test with a two-part
//!   statistical significance gate, removes examples covered by significant
//!   rules from the remaining universe entirely, and resamples the window
//!   from candidates covered by insignificant rules plus uncovered
//!   positives. Requires a noise-tolerant base learner.

use std::collections::{HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::learners::Learner;
use crate::model::{coverage_indexed, Dataset, Label, Rule, Theory};

/// Width of the window-vs-total accuracy agreement band in the significance
/// gate. `Infinite` accepts any rule that clears the default-accuracy bar; it
/// is an explicit sentinel, not a large float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Finite(f64),
    Infinite,
}

impl Alpha {
    /// A finite band width; must be non-negative.
    pub fn finite(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "alpha must be a non-negative finite number or \"inf\", got {value}"
            )));
        }
        Ok(Alpha::Finite(value))
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Alpha::Finite(a) => write!(f, "{a}"),
            Alpha::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(Alpha::Infinite);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("cannot parse alpha from {s:?}")))?;
        Alpha::finite(v)
    }
}

// serialized as a number, or the string "inf"
impl serde::Serialize for Alpha {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Alpha::Finite(v) => serializer.serialize_f64(*v),
            Alpha::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Alpha {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct AlphaVisitor;
        impl serde::de::Visitor<'_> for AlphaVisitor {
            type Value = Alpha;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a non-negative number or the string \"inf\"")
            }

            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<Alpha, E> {
                Alpha::finite(v).map_err(E::custom)
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Alpha, E> {
                Alpha::finite(v as f64).map_err(E::custom)
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Alpha, E> {
                Alpha::finite(v as f64).map_err(E::custom)
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Alpha, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(AlphaVisitor)
    }
}

/// Parameters shared by all windowing strategies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowConfig {
    /// Size of the initial random window.
    pub init_size: usize,
    /// Maximum number of examples added per iteration.
    pub max_inc_size: usize,
    /// Significance band width (noise-tolerant strategy only).
    pub alpha: Alpha,
    /// Seed for window sampling and candidate resampling.
    pub seed: u64,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig {
            init_size: 100,
            max_inc_size: 50,
            alpha: Alpha::Finite(0.0),
            seed: 0,
        }
    }
}

/// Bookkeeping for one windowing iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationTrace {
    /// 1-based iteration counter.
    pub iteration: usize,
    /// Window size at the end of the iteration (after additions/removals).
    pub window_size: usize,
    /// Examples newly added to the window this iteration.
    pub new_examples: usize,
    /// Rules produced by the base learner this iteration.
    pub rules_learned: usize,
    /// Rules retained/accepted into the persistent set this iteration.
    pub rules_retained: usize,
    /// Window size at the moment of the learner call — what the processed-
    /// examples cost metric sums.
    pub learner_input_size: usize,
}

/// Result of one windowing run: the final theory and the full iteration
/// trace.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowingRun {
    pub theory: Theory,
    pub trace: Vec<IterationTrace>,
}

impl WindowingRun {
    /// Total examples submitted to the base learner over all iterations —
    /// the implementation-independent cost metric.
    pub fn processed_examples(&self) -> usize {
        self.trace.iter().map(|t| t.learner_input_size).sum()
    }

    pub fn iterations(&self) -> usize {
        self.trace.len()
    }

    /// Window size at the end of the final iteration.
    pub fn final_window_size(&self) -> usize {
        self.trace.last().map_or(0, |t| t.window_size)
    }
}

/// Standard error of a classification-accuracy estimate from `n` examples:
/// `sqrt(acc * (1 - acc) / n)`.
///
/// Panics when `n` is zero; callers must reject zero-coverage rules first.
pub fn standard_error(acc: f64, n: usize) -> f64 {
    assert!(n >= 1, "standard error of an estimate from zero examples");
    (acc * (1.0 - acc) / n as f64).sqrt()
}

/// Per-rule accuracy estimates feeding the significance gate. "Accuracy" is
/// the rule's precision over the examples it covers; `n_win`/`n_tot` count
/// those covered examples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleStats {
    pub acc_win: f64,
    pub n_win: usize,
    pub acc_tot: f64,
    pub n_tot: usize,
    pub se_win: f64,
    pub se_tot: f64,
    /// Default accuracy: majority-class proportion of the full training set,
    /// fixed when the run starts.
    pub da: f64,
}

/// The two-part significance gate for a rule learned from the window:
///
/// 1. its window precision must clear the default accuracy by one standard
///    error: `acc_win - SE(acc_win) > DA`;
/// 2. its window precision must agree with its precision on the remaining
///    training examples: `|acc_win - acc_tot| <= alpha * SE(acc_tot)`
///    (always satisfied for `Alpha::Infinite`).
///
/// Rules covering no window example or no training example are rejected
/// outright rather than erroring.
pub fn significant(
    data: &Dataset,
    rule: &Rule,
    window: &[usize],
    training: &[usize],
    alpha: Alpha,
    da: f64,
) -> (bool, RuleStats) {
    let win = coverage_indexed(rule, data, window);
    let tot = coverage_indexed(rule, data, training);
    if win.total() == 0 || tot.total() == 0 {
        return (
            false,
            RuleStats {
                acc_win: 0.0,
                n_win: win.total(),
                acc_tot: 0.0,
                n_tot: tot.total(),
                se_win: 0.0,
                se_tot: 0.0,
                da,
            },
        );
    }
    let acc_win = win.precision();
    let acc_tot = tot.precision();
    let se_win = standard_error(acc_win, win.total());
    let se_tot = standard_error(acc_tot, tot.total());
    let stats = RuleStats {
        acc_win,
        n_win: win.total(),
        acc_tot,
        n_tot: tot.total(),
        se_win,
        se_tot,
        da,
    };
    let clears_default = acc_win - se_win > da;
    let agrees = match alpha {
        Alpha::Infinite => true,
        Alpha::Finite(a) => (acc_win - acc_tot).abs() <= a * se_tot,
    };
    (clears_default && agrees, stats)
}

/// Uniform sample without replacement of `min(k, |candidates|)` elements.
/// The result preserves the candidates' order.
pub fn resample_candidates(candidates: &[usize], k: usize, rng: &mut StdRng) -> Vec<usize> {
    assert!(k >= 1, "resampling zero candidates");
    if candidates.len() <= k {
        return candidates.to_vec();
    }
    let mut positions = rand::seq::index::sample(rng, candidates.len(), k).into_vec();
    positions.sort_unstable();
    positions.into_iter().map(|p| candidates[p]).collect()
}

fn seed_window(training: &[usize], init_size: usize, rng: &mut StdRng) -> Vec<usize> {
    resample_candidates(training, init_size, rng)
}

fn validate(config: &WindowConfig, training_len: usize) -> Result<()> {
    if config.init_size < 1 || config.max_inc_size < 1 {
        return Err(Error::InvalidArgument(
            "window init size and max increment must both be at least 1".into(),
        ));
    }
    if config.init_size > training_len {
        return Err(Error::InvalidArgument(format!(
            "initial window of {} exceeds the {} available training examples",
            config.init_size, training_len
        )));
    }
    Ok(())
}

/// One testing phase shared by the basic and integrative strategies: scan the
/// queue, moving misclassified examples into the new window (stopping at
/// `max_inc_size`) and correctly classified ones into a held-back list that
/// is re-appended behind the still-unscanned queue, so the next iteration
/// starts with fresh examples.
fn scan_queue(
    data: &Dataset,
    theory: &Theory,
    queue: &mut VecDeque<usize>,
    max_inc_size: usize,
) -> Vec<usize> {
    let mut new_window = Vec::new();
    let mut old_test = Vec::new();
    while let Some(idx) = queue.pop_front() {
        let ex = data.example(idx);
        if theory.classify(ex) != ex.label {
            new_window.push(idx);
            if new_window.len() == max_inc_size {
                break;
            }
        } else {
            old_test.push(idx);
        }
    }
    queue.extend(old_test);
    new_window
}

#[cfg(debug_assertions)]
fn assert_disjoint(window: &[usize], queue: &VecDeque<usize>) {
    let w: HashSet<usize> = window.iter().copied().collect();
    assert_eq!(w.len(), window.len(), "window contains duplicates");
    assert!(
        queue.iter().all(|i| !w.contains(i)),
        "window and test queue overlap"
    );
}

/// Basic windowing: learn from the window, add up to `max_inc_size`
/// misclassified examples, repeat until an iteration adds nothing. Returns
/// the theory of the final iteration.
pub fn basic_windowing(
    data: &Dataset,
    training: &[usize],
    learner: &mut dyn Learner,
    config: &WindowConfig,
) -> Result<WindowingRun> {
    validate(config, training.len())?;
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut window = seed_window(training, config.init_size, &mut rng);
    let window_set: HashSet<usize> = window.iter().copied().collect();
    let mut queue: VecDeque<usize> = training
        .iter()
        .copied()
        .filter(|i| !window_set.contains(i))
        .collect();

    let mut trace = Vec::new();
    loop {
        #[cfg(debug_assertions)]
        assert_disjoint(&window, &queue);
        let learner_input_size = window.len();
        let theory = learner.induce(data, &window);
        let new_window = scan_queue(data, &theory, &mut queue, config.max_inc_size);
        let new_examples = new_window.len();
        window.extend(new_window);
        window.sort_unstable();
        trace.push(IterationTrace {
            iteration: trace.len() + 1,
            window_size: window.len(),
            new_examples,
            rules_learned: theory.rules.len(),
            rules_retained: 0,
            learner_input_size,
        });
        if new_examples == 0 {
            return Ok(WindowingRun { theory, trace });
        }
    }
}

/// Integrative windowing: like the basic strategy, but after each testing
/// phase every rule of the current theory that covered no negative among the
/// newly added examples is moved into a retained set and its covered
/// examples leave the window for a reserved pool. Retained rules are
/// re-tested every iteration (the reserved pool is re-added first) but never
/// re-learned.
pub fn integrative_windowing(
    data: &Dataset,
    training: &[usize],
    learner: &mut dyn Learner,
    config: &WindowConfig,
) -> Result<WindowingRun> {
    validate(config, training.len())?;
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut window = seed_window(training, config.init_size, &mut rng);
    let window_set: HashSet<usize> = window.iter().copied().collect();
    let mut queue: VecDeque<usize> = training
        .iter()
        .copied()
        .filter(|i| !window_set.contains(i))
        .collect();
    let mut old_rules: Vec<Rule> = Vec::new();
    let mut reserved: Vec<usize> = Vec::new();

    let mut trace = Vec::new();
    loop {
        #[cfg(debug_assertions)]
        assert_disjoint(&window, &queue);
        let learner_input_size = window.len();
        let new_rules = learner.induce(data, &window);
        let rules_learned = new_rules.rules.len();
        let mut theory_rules = new_rules.rules;
        theory_rules.extend(old_rules.iter().cloned());
        let theory = Theory::new(theory_rules);

        let new_window = scan_queue(data, &theory, &mut queue, config.max_inc_size);
        let new_examples = new_window.len();

        // the reserved examples rejoin the window before retention re-decides
        window.extend(new_window.iter().copied());
        window.append(&mut reserved);
        window.sort_unstable();

        old_rules.clear();
        for rule in &theory.rules {
            let consistent = new_window
                .iter()
                .all(|&i| data.example(i).label == Label::Positive || !rule.covers(data.example(i)));
            if consistent {
                old_rules.push(rule.clone());
                let (covered, kept): (Vec<usize>, Vec<usize>) =
                    window.iter().partition(|&&i| rule.covers(data.example(i)));
                reserved.extend(covered);
                window = kept;
            }
        }
        reserved.sort_unstable();
        reserved.dedup();
        #[cfg(debug_assertions)]
        {
            let w: HashSet<usize> = window.iter().copied().collect();
            assert!(
                reserved.iter().all(|i| !w.contains(i)),
                "reserved pool overlaps the window"
            );
        }

        trace.push(IterationTrace {
            iteration: trace.len() + 1,
            window_size: window.len(),
            new_examples,
            rules_learned,
            rules_retained: old_rules.len(),
            learner_input_size,
        });
        if new_examples == 0 {
            return Ok(WindowingRun { theory, trace });
        }
    }
}

/// Noise-tolerant windowing. Each iteration the base learner's rules are
/// tested with the significance gate against the current window and the
/// remaining (not yet covered) training examples: significant rules join the
/// final theory and their covered examples leave both window and remaining
/// set for good; insignificant rules mark their covered examples as window
/// candidates. Uncovered positives are candidates too. The next window is
/// the reduced window plus `max_inc_size` random candidates. When the
/// learner comes back empty-handed the window is doubled from the leftover
/// examples (the completeness check); when no candidates remain the run
/// terminates.
///
/// The default accuracy is fixed from the training set before the first
/// iteration.
pub fn noise_tolerant_windowing(
    data: &Dataset,
    training: &[usize],
    learner: &mut dyn Learner,
    config: &WindowConfig,
) -> Result<WindowingRun> {
    validate(config, training.len())?;
    let mut rng = StdRng::seed_from_u64(config.seed);
    let mut window = seed_window(training, config.init_size, &mut rng);
    let mut remaining: Vec<usize> = training.to_vec();
    let da = data.default_accuracy(training);

    let mut theory_rules: Vec<Rule> = Vec::new();
    let mut trace = Vec::new();
    #[cfg(debug_assertions)]
    let mut removed_forever: HashSet<usize> = HashSet::new();

    loop {
        #[cfg(debug_assertions)]
        {
            let rem: HashSet<usize> = remaining.iter().copied().collect();
            assert!(window.iter().all(|i| rem.contains(i)), "window escaped the remaining set");
            assert!(window.iter().all(|i| !removed_forever.contains(i)));
        }
        let learner_input_size = window.len();
        let new_rules = learner.induce(data, &window);

        if new_rules.rules.is_empty() {
            // With no rules at all, the candidate set degenerates to the
            // uncovered positives outside the window; once none of those are
            // left the run is over. Otherwise the completeness check doubles
            // the window (drawing from both classes of the leftover
            // examples) instead of adding the usual small increment.
            let window_set: HashSet<usize> = window.iter().copied().collect();
            let outside: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|i| !window_set.contains(i))
                .collect();
            let positives_outside = outside
                .iter()
                .any(|&i| data.example(i).label == Label::Positive);
            trace.push(IterationTrace {
                iteration: trace.len() + 1,
                window_size: window.len(),
                new_examples: 0,
                rules_learned: 0,
                rules_retained: 0,
                learner_input_size,
            });
            if !positives_outside {
                return Ok(WindowingRun {
                    theory: Theory::new(theory_rules),
                    trace,
                });
            }
            let add = resample_candidates(&outside, window.len().max(1), &mut rng);
            let added = add.len();
            window.extend(add);
            window.sort_unstable();
            trace.last_mut().expect("trace entry just pushed").new_examples = added;
            trace.last_mut().expect("trace entry just pushed").window_size = window.len();
            continue;
        }

        // judge every rule against the iteration-start window and remaining
        // set; removals accumulate separately
        let window_start = window.clone();
        let remaining_start = remaining.clone();
        let mut accepted = 0usize;
        let mut insignificant: Vec<Rule> = Vec::new();
        for rule in &new_rules.rules {
            let (ok, _stats) = significant(
                data,
                rule,
                &window_start,
                &remaining_start,
                config.alpha,
                da,
            );
            if ok {
                theory_rules.push(rule.clone());
                accepted += 1;
                #[cfg(debug_assertions)]
                for &i in &remaining {
                    if rule.covers(data.example(i)) {
                        removed_forever.insert(i);
                    }
                }
                window.retain(|&i| !rule.covers(data.example(i)));
                remaining.retain(|&i| !rule.covers(data.example(i)));
            } else {
                insignificant.push(rule.clone());
            }
        }

        let window_set: HashSet<usize> = window.iter().copied().collect();
        let mut candidates: Vec<usize> = Vec::new();
        for &i in &remaining {
            if window_set.contains(&i) {
                continue;
            }
            let ex = data.example(i);
            let covered_by_insignificant = insignificant.iter().any(|r| r.covers(ex));
            let uncovered_positive = ex.label == Label::Positive
                && !new_rules.rules.iter().any(|r| r.covers(ex));
            if covered_by_insignificant || uncovered_positive {
                candidates.push(i);
            }
        }

        let done = candidates.is_empty();
        let mut new_examples = 0;
        if !done {
            let add = resample_candidates(&candidates, config.max_inc_size, &mut rng);
            new_examples = add.len();
            window.extend(add);
            window.sort_unstable();
        }
        trace.push(IterationTrace {
            iteration: trace.len() + 1,
            window_size: window.len(),
            new_examples,
            rules_learned: new_rules.rules.len(),
            rules_retained: accepted,
            learner_input_size,
        });
        if done {
            return Ok(WindowingRun {
                theory: Theory::new(theory_rules),
                trace,
            });
        }
    }
}
