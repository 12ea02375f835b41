//! Comparison harness: instances × ratios × algorithms, repeated.
//!
//! ```toml
//! seed = 1
//! repetitions = 10
//! baseline = "gcs"
//! algorithms = ["gcs", "abma"]
//! ratios = [0.3, 0.5, 0.7]
//!
//! [params]
//! iterations = 1000
//!
//! [[instances]]
//! path = "comm3.nrp"        # relative to the manifest
//!
//! [[instances]]
//! preset = "nrp-1"
//! preset_seed = 7
//! ```
//!
//! Repetition `r` of every cell runs with seed `seed + r`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use nrp_core::{budget_from_ratio, generate, GeneratorConfig, Instance, Ratio};
use serde::{Deserialize, Serialize};

use crate::format::read_instance;
use crate::report::{solve, AlgoParams, Solver};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum RatioSpec {
    Number(f64),
    Text(String),
}

impl RatioSpec {
    fn parse(&self) -> Result<Ratio> {
        let text = match self {
            RatioSpec::Number(x) => x.to_string(),
            RatioSpec::Text(s) => s.clone(),
        };
        text.parse().with_context(|| format!("invalid ratio {text:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub path: Option<PathBuf>,
    pub preset: Option<String>,
    pub preset_seed: Option<u64>,
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    /// Required: experiments must be reproducible.
    pub seed: Option<u64>,
    #[serde(default = "one")]
    pub repetitions: u32,
    pub baseline: Option<Solver>,
    pub algorithms: Vec<Solver>,
    pub ratios: Vec<RatioSpec>,
    #[serde(default)]
    pub params: AlgoParams,
    pub instances: Vec<InstanceSpec>,
}

fn one() -> u32 {
    1
}

/// One table row: the mean of `repetitions` runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub instance: String,
    pub ratio: String,
    pub bound: u64,
    pub algo: Solver,
    /// Mean profit, rounded half up.
    pub profit: u64,
    pub time_s: f64,
    /// Percent change of mean profit over the baseline; `None` when the
    /// baseline mean is zero. Always 0 on the baseline's own row.
    pub profit_ratio_pct: Option<f64>,
    pub time_ratio_pct: Option<f64>,
    pub profit_mean: f64,
    pub profits: Vec<u64>,
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let m: Manifest = toml::from_str(text).context("invalid manifest")?;
    ensure!(m.seed.is_some(), "manifest must set `seed`");
    ensure!(m.repetitions > 0, "`repetitions` must be at least 1");
    ensure!(!m.algorithms.is_empty(), "`algorithms` must not be empty");
    ensure!(!m.ratios.is_empty(), "`ratios` must not be empty");
    ensure!(!m.instances.is_empty(), "`instances` must not be empty");
    let baseline = m.baseline();
    ensure!(m.algorithms.contains(&baseline), "baseline {baseline} is not among the algorithms");
    for r in &m.ratios {
        r.parse()?;
    }
    Ok(m)
}

impl Manifest {
    /// Named baseline, or the first algorithm.
    pub fn baseline(&self) -> Solver {
        self.baseline.unwrap_or(self.algorithms[0])
    }

    fn load(&self, spec: &InstanceSpec, dir: &Path) -> Result<(String, Instance)> {
        match (&spec.path, &spec.preset) {
            (Some(path), None) => {
                let full = dir.join(path);
                let text = std::fs::read_to_string(&full).with_context(|| format!("reading {}", full.display()))?;
                let file = read_instance(&text).with_context(|| format!("parsing {}", full.display()))?;
                let stem = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into());
                Ok((spec.name.clone().unwrap_or(stem), file.instance))
            }
            (None, Some(preset)) => {
                let seed = spec.preset_seed.context("preset instances need `preset_seed`")?;
                let cfg = GeneratorConfig::preset(preset, seed).with_context(|| format!("unknown preset {preset:?}"))?;
                let name = spec.name.clone().unwrap_or_else(|| format!("{preset}-s{seed}"));
                Ok((name, generate(&cfg)?))
            }
            _ => bail!("each instance needs exactly one of `path` or `preset`"),
        }
    }
}

/// Runs every cell in manifest order. `dir` resolves relative paths.
pub fn run(manifest: &Manifest, dir: &Path) -> Result<Vec<Cell>> {
    let seed = manifest.seed.context("manifest must set `seed`")?;
    let reps = manifest.repetitions;
    let baseline = manifest.baseline();
    let mut cells = Vec::new();
    for spec in &manifest.instances {
        let (name, instance) = manifest.load(spec, dir)?;
        for r in &manifest.ratios {
            let ratio = r.parse()?;
            let budget = budget_from_ratio(&instance, ratio);
            let mut row = Vec::new();
            for &algo in &manifest.algorithms {
                let mut profits = Vec::with_capacity(reps as usize);
                let mut seconds = 0.0;
                for k in 0..reps {
                    let report = solve(&name, &instance, budget, algo, &manifest.params, seed.wrapping_add(k as u64))
                        .with_context(|| format!("{name} at ratio {ratio} with {algo}"))?;
                    profits.push(report.profit);
                    seconds += report.elapsed_ms / 1e3;
                }
                let total: u64 = profits.iter().sum();
                row.push(Cell {
                    instance: name.clone(),
                    ratio: ratio.to_string(),
                    bound: budget.bound,
                    algo,
                    profit: (2 * total + reps as u64) / (2 * reps as u64),
                    time_s: seconds / reps as f64,
                    profit_ratio_pct: None,
                    time_ratio_pct: None,
                    profit_mean: total as f64 / reps as f64,
                    profits,
                });
            }
            let base = row.iter().find(|c| c.algo == baseline).expect("baseline validated").clone();
            for c in &mut row {
                if c.algo == baseline {
                    c.profit_ratio_pct = Some(0.0);
                    c.time_ratio_pct = Some(0.0);
                } else {
                    c.profit_ratio_pct = pct(c.profit_mean, base.profit_mean);
                    c.time_ratio_pct = pct(c.time_s, base.time_s);
                }
            }
            cells.extend(row);
        }
    }
    Ok(cells)
}

fn pct(value: f64, base: f64) -> Option<f64> {
    (base != 0.0).then(|| (value - base) / base * 100.0)
}

pub const CSV_HEADER: &str = "instance,ratio,bound,algo,profit,time_s,profit_ratio_pct,time_ratio_pct";

pub fn to_csv(cells: &[Cell]) -> String {
    let fmt = |x: Option<f64>| x.map_or_else(|| "NA".to_string(), |v| format!("{:.2}", (v * 100.0).round() / 100.0 + 0.0));
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for c in cells {
        writeln!(
            out,
            "{},{},{},{},{},{:.2},{},{}",
            c.instance,
            c.ratio,
            c.bound,
            c.algo,
            c.profit,
            c.time_s,
            fmt(c.profit_ratio_pct),
            fmt(c.time_ratio_pct)
        )
        .unwrap();
    }
    out
}

pub fn to_json(cells: &[Cell]) -> String {
    serde_json::to_string_pretty(cells).expect("cells serialize")
}
