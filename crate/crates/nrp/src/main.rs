use std::collections::hash_map::RandomState;
use std::hash::{BuildHasher, Hasher};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nrp_core::backbone::{exact_backbone, DEFAULT_ENUMERATION_CAP};
use nrp_core::{budget_from_ratio, generate, Algorithm, Budget, GeneratorConfig, Ratio, SearchParams};
use nrp::config::parse_config;
use nrp::format::{read_instance, write_assignment, write_instance, InstanceFile};
use nrp::report::{solve, AlgoParams, Solver};
use nrp::{experiment, landscape};

#[derive(Parser)]
#[command(name = "nrp", version, about = "Next release problem solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance from a TOML config or a built-in preset.
    Generate {
        /// Generator config file.
        #[arg(required_unless_present = "preset", conflicts_with = "preset")]
        config: Option<PathBuf>,
        /// Built-in preset: nrp-1 .. nrp-5.
        #[arg(long)]
        preset: Option<String>,
        /// Overrides the config's seed (default 0 for presets).
        #[arg(long)]
        seed: Option<u64>,
        /// Also write a `budget` line for this ratio of the total cost.
        #[arg(long)]
        ratio: Option<Ratio>,
        /// Output file (standard output when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance and print a JSON run report.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        /// random, hillclimb, gcs, lmsa, abma or exact.
        #[arg(long, default_value = "abma")]
        algo: Solver,
        /// Seed; a random one is drawn and printed when omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        params: ParamArgs,
        /// Print JSON-line traces to standard error.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Print the exact backbone as `fix <customer> <bit>` lines.
    Backbone {
        instance: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sample local optima against a reference and print a CSV.
    Landscape {
        instance: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value = "hillclimb")]
        algo: Algorithm,
        #[arg(long, default_value_t = 1000)]
        rounds: usize,
        #[arg(long, default_value_t = 1000)]
        iters: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a comparison manifest; prints the CSV table.
    Experiment {
        manifest: PathBuf,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also write the per-cell JSON here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BudgetArgs {
    /// Budget as a fraction of the total requirement cost, e.g. 0.7 or 7/10.
    #[arg(long, conflicts_with = "budget")]
    ratio: Option<Ratio>,
    /// Absolute budget bound.
    #[arg(long)]
    budget: Option<u64>,
}

impl BudgetArgs {
    fn resolve(&self, file: &InstanceFile) -> Result<Budget> {
        match (self.ratio, self.budget, file.budget) {
            (Some(r), _, _) => Ok(budget_from_ratio(&file.instance, r)),
            (None, Some(b), _) | (None, None, Some(b)) => Ok(Budget::new(b)),
            (None, None, None) => bail!("no budget: pass --ratio or --budget, or add a `budget` line"),
        }
    }
}

#[derive(Args)]
struct ParamArgs {
    /// Iterations per run (per operator call under abma).
    #[arg(long)]
    iters: Option<u64>,
    /// Restarts (default 1, or 10 for abma).
    #[arg(long)]
    restarts: Option<u32>,
    /// Initial annealing temperature.
    #[arg(long)]
    temperature: Option<f64>,
    /// Lundy-Mees cooling parameter.
    #[arg(long)]
    beta: Option<f64>,
    /// Local optima per abma level.
    #[arg(long)]
    local_optima: Option<usize>,
    /// Abma stops reducing below this fraction of the original customers.
    #[arg(long)]
    stop_ratio: Option<f64>,
    /// Operator embedded in abma.
    #[arg(long)]
    operator: Option<Algorithm>,
}

impl ParamArgs {
    fn to_params(&self) -> AlgoParams {
        let d = AlgoParams::default();
        AlgoParams {
            iterations: self.iters.unwrap_or(d.iterations),
            restarts: self.restarts,
            temperature: self.temperature.unwrap_or(d.temperature),
            beta: self.beta.unwrap_or(d.beta),
            local_optima: self.local_optima.unwrap_or(d.local_optima),
            stop_ratio: self.stop_ratio.unwrap_or(d.stop_ratio),
            operator: self.operator.unwrap_or(d.operator),
        }
    }
}

fn load(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn seed_or_random(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = RandomState::new().build_hasher().finish();
        eprintln!("seed: {s}");
        s
    })
}

fn name_of(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { config, preset, seed, ratio, out } => {
            let cfg = match (config, preset) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let (_, mut cfg) = parse_config(&text).with_context(|| format!("in {}", path.display()))?;
                    cfg.seed = seed.unwrap_or(cfg.seed);
                    cfg
                }
                (None, Some(name)) => GeneratorConfig::preset(&name, seed.unwrap_or(0))
                    .with_context(|| format!("unknown preset {name:?}"))?,
                (None, None) => unreachable!("clap requires one"),
            };
            let inst = generate(&cfg)?;
            let budget = ratio.map(|r| budget_from_ratio(&inst, r).bound);
            emit(out.as_deref(), &write_instance(&inst, budget))
        }
        Command::Solve { instance, budget, algo, seed, params, verbose } => {
            let file = load(&instance)?;
            let b = budget.resolve(&file)?;
            let report = solve(&name_of(&instance), &file.instance, b, algo, &params.to_params(), seed_or_random(seed))?;
            if verbose {
                for t in &report.level_traces {
                    eprintln!("{}", serde_json::json!({ "event": "level", "trace": t }));
                }
                eprintln!(
                    "{}",
                    serde_json::json!({ "event": "done", "profit": report.profit, "evaluations": report.evaluations })
                );
            }
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
        Command::Backbone { instance, budget } => {
            let file = load(&instance)?;
            let b = budget.resolve(&file)?;
            if file.instance.num_customers() > DEFAULT_ENUMERATION_CAP {
                bail!(
                    "instance has {} customers; exact backbones are limited to {}",
                    file.instance.num_customers(),
                    DEFAULT_ENUMERATION_CAP
                );
            }
            print!("{}", write_assignment(&exact_backbone(&file.instance, b)?));
            Ok(())
        }
        Command::Landscape { instance, budget, algo, rounds, iters, seed, out } => {
            let file = load(&instance)?;
            let b = budget.resolve(&file)?;
            let seed = seed_or_random(seed);
            let reference = landscape::reference(&file.instance, b, seed)?;
            let params = SearchParams { iterations: iters, seed, ..SearchParams::default() };
            let points = landscape::landscape(&file.instance, b, &reference, algo, params, rounds, seed)?;
            emit(out.as_deref(), &landscape::to_csv(&reference, algo, &points))
        }
        Command::Experiment { manifest, csv, json } => {
            let text = std::fs::read_to_string(&manifest).with_context(|| format!("reading {}", manifest.display()))?;
            let m = experiment::parse_manifest(&text)?;
            let dir = manifest.parent().unwrap_or(Path::new("."));
            let cells = experiment::run(&m, dir)?;
            if let Some(p) = json {
                std::fs::write(&p, experiment::to_json(&cells)).with_context(|| format!("writing {}", p.display()))?;
            }
            emit(csv.as_deref(), &experiment::to_csv(&cells))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
