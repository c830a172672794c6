//! Experiment runner: a learner × strategy × training-size grid, repeated
//! over seeds, with machine-readable result tables.
//!
//! One base seed pins an entire plan: run `r` at any size uses seed
//! `base + r`, from which subset selection, windowing, and learner internals
//! derive their own streams. Two executions of the same plan produce
//! identical records except for wall time.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::data::{load_csv, sample_split};
use crate::error::{Error, Result};
use crate::learners::{induce_dos, induce_irip, DosLearner, IripLearner};
use crate::model::{accuracy, Dataset, Theory};
use crate::postprocess::remove_redundant_rules;
use crate::seeds::{self, stream};
use crate::windowing::{
    basic_windowing, integrative_windowing, noise_tolerant_windowing, Alpha, WindowConfig,
    WindowingRun,
};

/// Where the preclassified example set comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataSource {
    File {
        path: String,
        positive_class: String,
    },
    Krk {
        count: usize,
        seed: u64,
        #[serde(default)]
        with_replacement: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LearnerKind {
    Dos,
    Irip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    None,
    Basic,
    Integrative,
    NoiseTolerant,
}

/// What the learned theory's accuracy is measured on: the entire source
/// example set (training subset included) or a held-out file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalTarget {
    Full,
    File { path: String },
}

/// A full experiment description. `sizes` must be strictly ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub source: DataSource,
    pub learner: LearnerKind,
    pub strategy: Strategy,
    pub sizes: Vec<usize>,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default = "default_init_size")]
    pub init_size: usize,
    #[serde(default = "default_max_inc_size")]
    pub max_inc_size: usize,
    #[serde(default = "default_alpha")]
    pub alpha: Alpha,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_eval")]
    pub eval: EvalTarget,
}

fn default_repeats() -> usize {
    10
}
fn default_init_size() -> usize {
    100
}
fn default_max_inc_size() -> usize {
    50
}
fn default_alpha() -> Alpha {
    Alpha::Finite(0.0)
}
fn default_eval() -> EvalTarget {
    EvalTarget::Full
}

/// Metrics of one training run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub size: usize,
    pub repeat: usize,
    pub seed: u64,
    pub accuracy: f64,
    pub iterations: usize,
    pub processed_examples: usize,
    pub final_window: usize,
    pub rules: usize,
    /// Informational only; never compared or asserted on.
    pub wall_time: f64,
}

fn load_source(source: &DataSource) -> Result<Dataset> {
    match source {
        DataSource::File {
            path,
            positive_class,
        } => load_csv(path, positive_class),
        DataSource::Krk {
            count,
            seed,
            with_replacement,
        } => crate::data::generate_krk(*count, *seed, *with_replacement),
    }
}

fn validate_plan(plan: &ExperimentPlan, source_len: usize) -> Result<()> {
    if plan.repeats < 1 {
        return Err(Error::InvalidArgument("repeats must be at least 1".into()));
    }
    if plan.sizes.is_empty() {
        return Err(Error::InvalidArgument("plan lists no training sizes".into()));
    }
    if !plan.sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(
            "training sizes must be strictly ascending".into(),
        ));
    }
    if let Some(&max) = plan.sizes.last() {
        if max > source_len {
            return Err(Error::InvalidArgument(format!(
                "training size {max} exceeds the {source_len} available examples"
            )));
        }
    }
    if plan.strategy == Strategy::NoiseTolerant && plan.learner == LearnerKind::Dos {
        return Err(Error::InvalidArgument(
            "noise-tolerant windowing relies on a noise-tolerant base learner; use irip".into(),
        ));
    }
    if plan.strategy != Strategy::None {
        let smallest = plan.sizes[0];
        if plan.init_size > smallest {
            return Err(Error::InvalidArgument(format!(
                "initial window of {} exceeds the smallest training size {smallest}",
                plan.init_size
            )));
        }
    }
    Ok(())
}

struct StrategyOutcome {
    theory: Theory,
    iterations: usize,
    processed_examples: usize,
    final_window: usize,
}

impl From<WindowingRun> for StrategyOutcome {
    fn from(run: WindowingRun) -> Self {
        StrategyOutcome {
            iterations: run.iterations(),
            processed_examples: run.processed_examples(),
            final_window: run.final_window_size(),
            theory: run.theory,
        }
    }
}

fn run_one(
    plan: &ExperimentPlan,
    train: &Dataset,
    run_seed: u64,
) -> Result<StrategyOutcome> {
    let idx = train.all_indices();
    let config = WindowConfig {
        init_size: plan.init_size,
        max_inc_size: plan.max_inc_size,
        alpha: plan.alpha,
        seed: seeds::derive(run_seed, stream::WINDOW),
    };
    let learner_seed = seeds::derive(run_seed, stream::LEARNER);
    let outcome = match plan.strategy {
        Strategy::None => {
            let theory = match plan.learner {
                LearnerKind::Dos => induce_dos(train, &idx),
                LearnerKind::Irip => induce_irip(train, &idx, learner_seed),
            };
            StrategyOutcome {
                theory,
                iterations: 1,
                processed_examples: train.len(),
                final_window: train.len(),
            }
        }
        Strategy::Basic => match plan.learner {
            LearnerKind::Dos => {
                basic_windowing(train, &idx, &mut DosLearner, &config)?.into()
            }
            LearnerKind::Irip => {
                basic_windowing(train, &idx, &mut IripLearner::new(learner_seed), &config)?.into()
            }
        },
        Strategy::Integrative => match plan.learner {
            LearnerKind::Dos => {
                integrative_windowing(train, &idx, &mut DosLearner, &config)?.into()
            }
            LearnerKind::Irip => {
                integrative_windowing(train, &idx, &mut IripLearner::new(learner_seed), &config)?
                    .into()
            }
        },
        Strategy::NoiseTolerant => {
            noise_tolerant_windowing(train, &idx, &mut IripLearner::new(learner_seed), &config)?
                .into()
        }
    };
    Ok(outcome)
}

/// Runs the whole grid: for every size × repeat, sample a training subset,
/// train, clean up redundant rules, and evaluate on the plan's target.
/// Records come back ordered by (size, repeat).
pub fn run_plan(plan: &ExperimentPlan) -> Result<Vec<RunRecord>> {
    let source = load_source(&plan.source)?;
    validate_plan(plan, source.len())?;
    let eval_data = match &plan.eval {
        EvalTarget::Full => None,
        EvalTarget::File { path } => {
            let held_out = load_csv(path, &source.class_names()[0])?;
            if held_out.schema() != source.schema() {
                return Err(Error::InvalidArgument(
                    "evaluation file schema does not match the training data".into(),
                ));
            }
            Some(held_out)
        }
    };

    let mut records = Vec::with_capacity(plan.sizes.len() * plan.repeats);
    for &size in &plan.sizes {
        for repeat in 0..plan.repeats {
            let run_seed = plan.seed.wrapping_add(repeat as u64);
            let (train, _rest) =
                sample_split(&source, size, seeds::derive(run_seed, stream::SUBSET))?;
            let started = Instant::now();
            let outcome = run_one(plan, &train, run_seed)?;
            let theory =
                remove_redundant_rules(&outcome.theory, &train, &train.all_indices());
            let wall_time = started.elapsed().as_secs_f64();
            let eval_examples = eval_data.as_ref().unwrap_or(&source).examples();
            records.push(RunRecord {
                size,
                repeat,
                seed: run_seed,
                accuracy: accuracy(&theory, eval_examples),
                iterations: outcome.iterations,
                processed_examples: outcome.processed_examples,
                final_window: outcome.final_window,
                rules: theory.rules.len(),
                wall_time,
            });
        }
    }
    Ok(records)
}

pub const RESULT_COLUMNS: &str =
    "size,repeat,seed,accuracy,iterations,processed_examples,final_window,rules,wall_time";

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation (n - 1 denominator); 0 for a single value.
fn stddev(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    (values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (values.len() - 1) as f64).sqrt()
}

/// Writes the records as CSV: one row per run in the given order, then one
/// summary row per size whose `repeat` field is `summary` and whose numeric
/// fields carry `mean/stddev` pairs.
pub fn emit_results(records: &[RunRecord], path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::from(RESULT_COLUMNS);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.size,
            r.repeat,
            r.seed,
            r.accuracy,
            r.iterations,
            r.processed_examples,
            r.final_window,
            r.rules,
            r.wall_time
        ));
    }

    let mut sizes: Vec<usize> = records.iter().map(|r| r.size).collect();
    sizes.dedup();
    for size in sizes {
        let group: Vec<&RunRecord> = records.iter().filter(|r| r.size == size).collect();
        let col = |f: fn(&RunRecord) -> f64| -> String {
            let values: Vec<f64> = group.iter().map(|r| f(r)).collect();
            format!("{}/{}", mean(&values), stddev(&values))
        };
        out.push_str(&format!(
            "{size},summary,,{},{},{},{},{},{}\n",
            col(|r| r.accuracy),
            col(|r| r.iterations as f64),
            col(|r| r.processed_examples as f64),
            col(|r| r.final_window as f64),
            col(|r| r.rules as f64),
            col(|r| r.wall_time),
        ));
    }
    std::fs::write(path.as_ref(), out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn krk_plan(strategy: Strategy, sizes: Vec<usize>) -> ExperimentPlan {
        ExperimentPlan {
            source: DataSource::Krk {
                count: 2000,
                seed: 77,
                with_replacement: false,
            },
            learner: LearnerKind::Dos,
            strategy,
            sizes,
            repeats: 2,
            init_size: 100,
            max_inc_size: 50,
            alpha: Alpha::Finite(0.0),
            seed: 5,
            eval: EvalTarget::Full,
        }
    }

    #[test]
    fn strategy_none_processes_exactly_the_training_size() {
        let records = run_plan(&krk_plan(Strategy::None, vec![300, 600])).unwrap();
        assert_eq!(records.len(), 4);
        for r in &records {
            assert_eq!(r.processed_examples, r.size);
            assert_eq!(r.iterations, 1);
        }
    }

    #[test]
    fn identical_plans_give_identical_records_except_wall_time() {
        let plan = krk_plan(Strategy::Basic, vec![500]);
        let a = run_plan(&plan).unwrap();
        let b = run_plan(&plan).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.size, y.size);
            assert_eq!(x.repeat, y.repeat);
            assert_eq!(x.seed, y.seed);
            assert_eq!(x.accuracy, y.accuracy);
            assert_eq!(x.iterations, y.iterations);
            assert_eq!(x.processed_examples, y.processed_examples);
            assert_eq!(x.final_window, y.final_window);
            assert_eq!(x.rules, y.rules);
        }
    }

    #[test]
    fn full_size_basic_windowing_evaluates_to_exactly_one() {
        // training on the whole source: termination means consistency with
        // every example, so full-set evaluation is exact
        let mut plan = krk_plan(Strategy::Basic, vec![2000]);
        plan.repeats = 3;
        for r in run_plan(&plan).unwrap() {
            assert_eq!(r.accuracy, 1.0);
        }
    }

    #[test]
    fn held_out_evaluation_reads_the_file() {
        use crate::data::{generate_krk, save_csv};
        let dir = tempfile::tempdir().unwrap();
        let eval_path = dir.path().join("eval.csv");
        // a disjoint-seed sample as the held-out set
        save_csv(&generate_krk(1500, 999, false).unwrap(), &eval_path).unwrap();

        let mut plan = krk_plan(Strategy::None, vec![800]);
        plan.repeats = 2;
        plan.eval = EvalTarget::File {
            path: eval_path.display().to_string(),
        };
        let records = run_plan(&plan).unwrap();
        assert_eq!(records.len(), 2);
        for r in &records {
            assert!(r.accuracy > 0.9, "held-out accuracy {}", r.accuracy);
        }

        // an evaluation file with a different schema is rejected
        use crate::model::{Attribute, Example, Label, Schema, Value};
        let other_path = dir.path().join("other.csv");
        let schema = Schema::new(vec![Attribute::numeric("x").unwrap()]).unwrap();
        let other = Dataset::new(
            schema,
            ["illegal".into(), "legal".into()],
            vec![Example::new(vec![Value::Numeric(1.0)], Label::Positive)],
        )
        .unwrap();
        save_csv(&other, &other_path).unwrap();
        plan.eval = EvalTarget::File {
            path: other_path.display().to_string(),
        };
        assert!(run_plan(&plan).is_err());
    }

    #[test]
    fn noise_tolerant_with_dos_is_rejected() {
        let mut plan = krk_plan(Strategy::NoiseTolerant, vec![500]);
        plan.learner = LearnerKind::Dos;
        let err = run_plan(&plan).unwrap_err();
        assert!(err.to_string().contains("noise-tolerant"));
    }

    #[test]
    fn plan_validation_catches_bad_sizes() {
        let mut plan = krk_plan(Strategy::None, vec![600, 300]);
        assert!(run_plan(&plan).is_err()); // not ascending
        plan.sizes = vec![300, 5000];
        assert!(run_plan(&plan).is_err()); // exceeds source
        plan.sizes = vec![];
        assert!(run_plan(&plan).is_err());
    }

    #[test]
    fn emit_writes_header_only_for_no_records() {
        let file = tempfile::NamedTempFile::new().unwrap();
        emit_results(&[], file.path()).unwrap();
        let text = std::fs::read_to_string(file.path()).unwrap();
        assert_eq!(text, format!("{RESULT_COLUMNS}\n"));
    }

    #[test]
    fn emit_row_counts_match_the_grid() {
        let records = run_plan(&krk_plan(Strategy::None, vec![300, 600])).unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        emit_results(&records, file.path()).unwrap();
        let text = std::fs::read_to_string(file.path()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        // header + 2 sizes * 2 repeats + 2 summary rows
        assert_eq!(lines.len(), 1 + 4 + 2);
        assert_eq!(lines[0], RESULT_COLUMNS);
        assert!(lines[5].contains(",summary,,"));
    }

    #[test]
    fn summary_rows_match_recomputed_statistics() {
        let records = run_plan(&krk_plan(Strategy::Basic, vec![400, 800])).unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        emit_results(&records, file.path()).unwrap();
        let text = std::fs::read_to_string(file.path()).unwrap();

        // independent recomputation from the emitted data rows
        let mut per_size: std::collections::BTreeMap<usize, Vec<Vec<f64>>> =
            std::collections::BTreeMap::new();
        let mut summaries: Vec<(usize, Vec<(f64, f64)>)> = Vec::new();
        for line in text.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            if fields[1] == "summary" {
                let size: usize = fields[0].parse().unwrap();
                let stats = fields[3..]
                    .iter()
                    .map(|cell| {
                        let (m, s) = cell.split_once('/').unwrap();
                        (m.parse().unwrap(), s.parse().unwrap())
                    })
                    .collect();
                summaries.push((size, stats));
            } else {
                let size: usize = fields[0].parse().unwrap();
                let nums: Vec<f64> = fields[3..].iter().map(|f| f.parse().unwrap()).collect();
                per_size.entry(size).or_default().push(nums);
            }
        }
        assert_eq!(summaries.len(), 2);
        for (size, stats) in summaries {
            let rows = &per_size[&size];
            for (col, &(m, s)) in stats.iter().enumerate() {
                let values: Vec<f64> = rows.iter().map(|r| r[col]).collect();
                let mean = values.iter().sum::<f64>() / values.len() as f64;
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
                    / (values.len() - 1) as f64;
                assert!((m - mean).abs() < 1e-9, "mean mismatch in column {col}");
                assert!((s - var.sqrt()).abs() < 1e-9, "stddev mismatch in column {col}");
            }
        }
    }

    #[test]
    fn plan_round_trips_through_json() {
        let plan = krk_plan(Strategy::NoiseTolerant, vec![500]);
        let mut plan = plan;
        plan.learner = LearnerKind::Irip;
        plan.alpha = Alpha::Infinite;
        let json = serde_json::to_string(&plan).unwrap();
        let back: ExperimentPlan = serde_json::from_str(&json).unwrap();
        assert_eq!(plan, back);
        let finite: ExperimentPlan =
            serde_json::from_str(&json.replace("\"inf\"", "0.5")).unwrap();
        assert_eq!(finite.alpha, Alpha::Finite(0.5));
    }
}
