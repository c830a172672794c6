//! Command-line front end: dataset generation, noise injection, redundancy
//! reports, single learning runs, and full experiment grids.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rulewin_core::bench::{
    emit_results, run_plan, DataSource, EvalTarget, ExperimentPlan, LearnerKind, Strategy,
};
use rulewin_core::data::{generate_krk, inject_noise, load_csv, save_csv, NoiseSpec};
use rulewin_core::learners::{induce_dos, induce_irip, DosLearner, IripLearner};
use rulewin_core::model::{accuracy, Theory};
use rulewin_core::postprocess::remove_redundant_rules;
use rulewin_core::redundancy::compute_redundancy;
use rulewin_core::seeds::{self, stream};
use rulewin_core::windowing::{
    basic_windowing, integrative_windowing, noise_tolerant_windowing, Alpha, WindowConfig,
};

#[derive(Parser)]
#[command(
    name = "rulewin",
    version,
    about = "Separate-and-conquer rule induction with windowing subsampling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset and write it as CSV
    Generate {
        #[command(subcommand)]
        domain: GenerateDomain,
    },
    /// Inject class noise into a dataset file
    Noise {
        /// Input dataset
        #[arg(long)]
        data: PathBuf,
        /// Class value treated as positive
        #[arg(long)]
        positive_class: String,
        /// Probability of redrawing each example's label (0..=1)
        #[arg(long)]
        level: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output dataset
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the conditional-entropy redundancy estimate of a dataset
    Redundancy {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        positive_class: String,
    },
    /// Run one learner (optionally wrapped in windowing) and print the theory
    Learn(LearnArgs),
    /// Run a learner x strategy x size grid and write a result table
    Experiment(ExperimentArgs),
}

#[derive(Subcommand)]
enum GenerateDomain {
    /// King-rook-king illegality over 18 boolean features (262,144 positions)
    Krk {
        /// Number of positions to sample
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample with replacement (lifts the distinct-position cap)
        #[arg(long)]
        with_replacement: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LearnerArg {
    Dos,
    Irip,
}

impl From<LearnerArg> for LearnerKind {
    fn from(a: LearnerArg) -> Self {
        match a {
            LearnerArg::Dos => LearnerKind::Dos,
            LearnerArg::Irip => LearnerKind::Irip,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    None,
    Basic,
    Integrative,
    NoiseTolerant,
}

impl From<StrategyArg> for Strategy {
    fn from(a: StrategyArg) -> Self {
        match a {
            StrategyArg::None => Strategy::None,
            StrategyArg::Basic => Strategy::Basic,
            StrategyArg::Integrative => Strategy::Integrative,
            StrategyArg::NoiseTolerant => Strategy::NoiseTolerant,
        }
    }
}

#[derive(Args)]
struct LearnArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    positive_class: String,
    #[arg(long, value_enum)]
    learner: LearnerArg,
    #[arg(long, value_enum, default_value = "none")]
    strategy: StrategyArg,
    #[arg(long, default_value_t = 100)]
    init_size: usize,
    #[arg(long, default_value_t = 50)]
    max_inc_size: usize,
    /// Significance band width for noise-tolerant windowing (number or "inf")
    #[arg(long, default_value = "0")]
    alpha: Alpha,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Read the whole plan from a JSON file instead of flags
    #[arg(long, conflicts_with_all = ["data", "krk_count"])]
    plan: Option<PathBuf>,
    /// Dataset file source
    #[arg(long, requires = "positive_class")]
    data: Option<PathBuf>,
    #[arg(long)]
    positive_class: Option<String>,
    /// Generated king-rook-king source of this many positions
    #[arg(long, conflicts_with = "data")]
    krk_count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    krk_seed: u64,
    #[arg(long)]
    krk_with_replacement: bool,
    #[arg(long, value_enum)]
    learner: Option<LearnerArg>,
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    /// Ascending training sizes, comma separated (e.g. 1000,5000,10000)
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    #[arg(long, default_value_t = 100)]
    init_size: usize,
    #[arg(long, default_value_t = 50)]
    max_inc_size: usize,
    #[arg(long, default_value = "0")]
    alpha: Alpha,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Evaluation target: "full" (entire source set) or "file:<path>"
    #[arg(long, default_value = "full", value_parser = parse_eval)]
    eval: EvalTarget,
    /// Result CSV path
    #[arg(long)]
    out: PathBuf,
}

fn parse_eval(s: &str) -> Result<EvalTarget, String> {
    if s == "full" {
        return Ok(EvalTarget::Full);
    }
    if let Some(path) = s.strip_prefix("file:") {
        if path.is_empty() {
            return Err("file: requires a path".into());
        }
        return Ok(EvalTarget::File { path: path.into() });
    }
    Err(format!("expected \"full\" or \"file:<path>\", got {s:?}"))
}

fn main() {
    env_logger::init();
    if let Err(err) = run(Cli::parse()) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { domain } => match domain {
            GenerateDomain::Krk {
                count,
                seed,
                with_replacement,
                out,
            } => {
                let data = generate_krk(count, seed, with_replacement)?;
                save_csv(&data, &out)?;
                println!(
                    "wrote {} examples ({} positive) to {}",
                    data.len(),
                    data.positive_indices().len(),
                    out.display()
                );
                Ok(())
            }
        },
        Command::Noise {
            data,
            positive_class,
            level,
            seed,
            out,
        } => {
            let input = load_csv(&data, &positive_class)
                .with_context(|| format!("loading {}", data.display()))?;
            let spec = NoiseSpec::new(level, seed)?;
            let noisy = inject_noise(&input, &spec);
            let changed = input
                .examples()
                .iter()
                .zip(noisy.examples())
                .filter(|(a, b)| a.label != b.label)
                .count();
            save_csv(&noisy, &out)?;
            println!(
                "redrew labels at level {level}; {changed} of {} examples changed; wrote {}",
                input.len(),
                out.display()
            );
            Ok(())
        }
        Command::Redundancy {
            data,
            positive_class,
        } => {
            let input = load_csv(&data, &positive_class)
                .with_context(|| format!("loading {}", data.display()))?;
            let report = compute_redundancy(&input)?;
            println!("examples:   {}", input.len());
            println!("cpe:        {:.6} bits", report.cpe);
            println!("max cpe:    {:.6} bits", report.max_cpe);
            println!(
                "redundancy: {:.6} ({:.2}%)",
                report.redundancy,
                100.0 * report.redundancy
            );
            Ok(())
        }
        Command::Learn(args) => learn(args),
        Command::Experiment(args) => experiment(args),
    }
}

fn learn(args: LearnArgs) -> Result<()> {
    let data = load_csv(&args.data, &args.positive_class)
        .with_context(|| format!("loading {}", args.data.display()))?;
    let idx = data.all_indices();
    let config = WindowConfig {
        init_size: args.init_size,
        max_inc_size: args.max_inc_size,
        alpha: args.alpha,
        seed: seeds::derive(args.seed, stream::WINDOW),
    };
    let learner_seed = seeds::derive(args.seed, stream::LEARNER);

    let (theory, iterations, processed): (Theory, usize, usize) =
        match (args.strategy, args.learner) {
            (StrategyArg::None, LearnerArg::Dos) => (induce_dos(&data, &idx), 1, data.len()),
            (StrategyArg::None, LearnerArg::Irip) => {
                (induce_irip(&data, &idx, learner_seed), 1, data.len())
            }
            (StrategyArg::NoiseTolerant, LearnerArg::Dos) => {
                bail!("noise-tolerant windowing relies on a noise-tolerant base learner; use irip")
            }
            (strategy, learner) => {
                let run = match (strategy, learner) {
                    (StrategyArg::Basic, LearnerArg::Dos) => {
                        basic_windowing(&data, &idx, &mut DosLearner, &config)?
                    }
                    (StrategyArg::Basic, LearnerArg::Irip) => {
                        basic_windowing(&data, &idx, &mut IripLearner::new(learner_seed), &config)?
                    }
                    (StrategyArg::Integrative, LearnerArg::Dos) => {
                        integrative_windowing(&data, &idx, &mut DosLearner, &config)?
                    }
                    (StrategyArg::Integrative, LearnerArg::Irip) => integrative_windowing(
                        &data,
                        &idx,
                        &mut IripLearner::new(learner_seed),
                        &config,
                    )?,
                    (StrategyArg::NoiseTolerant, LearnerArg::Irip) => noise_tolerant_windowing(
                        &data,
                        &idx,
                        &mut IripLearner::new(learner_seed),
                        &config,
                    )?,
                    _ => unreachable!("none and noise-tolerant+dos handled above"),
                };
                (run.theory.clone(), run.iterations(), run.processed_examples())
            }
        };

    let theory = remove_redundant_rules(&theory, &data, &idx);
    for rule in &theory.rules {
        println!("{}", rule.render(data.schema(), &data.class_names()[0]));
    }
    println!(
        "# rules: {}  training accuracy: {:.6}  iterations: {}  processed examples: {}",
        theory.rules.len(),
        accuracy(&theory, data.examples()),
        iterations,
        processed
    );
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<()> {
    let plan: ExperimentPlan = if let Some(path) = &args.plan {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
    } else {
        let source = if let Some(path) = &args.data {
            DataSource::File {
                path: path.display().to_string(),
                positive_class: args
                    .positive_class
                    .clone()
                    .expect("clap enforces --positive-class with --data"),
            }
        } else if let Some(count) = args.krk_count {
            DataSource::Krk {
                count,
                seed: args.krk_seed,
                with_replacement: args.krk_with_replacement,
            }
        } else {
            bail!("choose a data source: --data <csv> or --krk-count <n> (or use --plan)");
        };
        let Some(learner) = args.learner else {
            bail!("--learner is required without --plan");
        };
        let Some(strategy) = args.strategy else {
            bail!("--strategy is required without --plan");
        };
        if args.sizes.is_empty() {
            bail!("--sizes is required without --plan");
        }
        ExperimentPlan {
            source,
            learner: learner.into(),
            strategy: strategy.into(),
            sizes: args.sizes.clone(),
            repeats: args.repeats,
            init_size: args.init_size,
            max_inc_size: args.max_inc_size,
            alpha: args.alpha,
            seed: args.seed,
            eval: args.eval.clone(),
        }
    };

    let records = run_plan(&plan)?;
    emit_results(&records, &args.out)?;
    for &size in &plan.sizes {
        let group: Vec<_> = records.iter().filter(|r| r.size == size).collect();
        let mean = |f: &dyn Fn(&&rulewin_core::bench::RunRecord) -> f64| -> f64 {
            group.iter().map(f).sum::<f64>() / group.len() as f64
        };
        println!(
            "size {size}: mean accuracy {:.4}, mean processed {:.0}, mean final window {:.0} \
             ({} runs)",
            mean(&|r| r.accuracy),
            mean(&|r| r.processed_examples as f64),
            mean(&|r| r.final_window as f64),
            group.len()
        );
    }
    println!("wrote {} records to {}", records.len(), args.out.display());
    Ok(())
}
