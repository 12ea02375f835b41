//! Level-structured random instance generator.
//!
//! Requirements are laid out level by level. A requirement in level `k`
//! depends on up to `max_parents` requirements of level `k + 1`, so the last
//! level has no prerequisites and every arc points from a deeper level into
//! a shallower one: the graph is acyclic by construction.
//!
//! All draws come from [`SearchRng`] (ChaCha8) seeded with `config.seed`, in
//! this fixed order:
//!
//! 1. requirement costs, level by level, uniform in the level's range;
//! 2. for each requirement of each non-final level: a parent count uniform
//!    in `0..=min(max_parents, next level size)`, then that many distinct
//!    parents uniform over the next level;
//! 3. for each customer: a profit, a request count, then that many distinct
//!    requirements uniform over all levels.

use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::model::{Budget, Customer, Instance, ModelError};
use crate::search::SearchRng;

pub use crate::model::Ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("configuration has no levels")]
    NoLevels,
    #[error("level {level} is empty")]
    EmptyLevel { level: usize },
    #[error("{what} range {min}..{max} is empty")]
    EmptyRange { what: &'static str, min: u64, max: u64 },
    #[error("the last level must not have parents (got {0})")]
    LastLevelParents(usize),
    #[error("customers may request up to {requested} requirements but only {available} exist")]
    TooManyRequests { requested: u64, available: usize },
    #[error("customer count must be positive")]
    NoCustomers,
    #[error("profits must be positive")]
    ZeroProfit,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// One column group of a generation rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelSpec {
    pub count: usize,
    pub cost_min: u64,
    pub cost_max: u64,
    /// Upper bound on prerequisites drawn from the next level.
    pub max_parents: usize,
}

impl LevelSpec {
    pub const fn new(count: usize, cost_min: u64, cost_max: u64, max_parents: usize) -> Self {
        Self { count, cost_min, cost_max, max_parents }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub levels: Vec<LevelSpec>,
    pub customer_count: usize,
    /// Inclusive range of requests per customer.
    pub requests_per_customer: (u64, u64),
    /// Inclusive profit range.
    pub profit_range: (u64, u64),
    pub seed: u64,
}

/// Names of the built-in presets.
pub const PRESETS: [&str; 5] = ["nrp-1", "nrp-2", "nrp-3", "nrp-4", "nrp-5"];

/// Per level: cost range and maximum parents.
type Shape = (u64, u64, usize);

const THREE_LEVEL: [Shape; 3] = [(1, 5, 8), (2, 8, 2), (5, 10, 0)];
const FIVE_LEVEL: [Shape; 5] = [(1, 5, 8), (2, 7, 6), (3, 9, 4), (4, 10, 2), (5, 15, 0)];

impl GeneratorConfig {
    /// The five classic families: counts per level, cost ranges, parent
    /// fan-outs, customer counts, request and profit ranges.
    pub fn preset(name: &str, seed: u64) -> Option<Self> {
        let (counts, shape, customers, requests): (&[usize], &[Shape], usize, (u64, u64)) = match name {
            "nrp-1" => (&[20, 40, 80], &THREE_LEVEL, 100, (1, 5)),
            "nrp-2" => (&[20, 40, 80, 160, 320], &FIVE_LEVEL, 500, (1, 5)),
            "nrp-3" => (&[250, 500, 750], &THREE_LEVEL, 500, (1, 5)),
            "nrp-4" => (&[250, 500, 750, 1000, 750], &FIVE_LEVEL, 750, (1, 5)),
            "nrp-5" => (&[500, 500, 500], &[(1, 3, 4), (2, 2, 4), (3, 5, 0)], 1000, (1, 1)),
            _ => return None,
        };
        Some(Self {
            levels: counts.iter().zip(shape).map(|(&c, &(lo, hi, p))| LevelSpec::new(c, lo, hi, p)).collect(),
            customer_count: customers,
            requests_per_customer: requests,
            profit_range: (1, 50),
            seed,
        })
    }

    pub fn num_requirements(&self) -> usize {
        self.levels.iter().map(|l| l.count).sum()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let last = self.levels.last().ok_or(ConfigError::NoLevels)?;
        if last.max_parents != 0 {
            return Err(ConfigError::LastLevelParents(last.max_parents));
        }
        for (k, l) in self.levels.iter().enumerate() {
            if l.count == 0 {
                return Err(ConfigError::EmptyLevel { level: k + 1 });
            }
            check_range("cost", (l.cost_min, l.cost_max))?;
        }
        if self.customer_count == 0 {
            return Err(ConfigError::NoCustomers);
        }
        check_range("requests", self.requests_per_customer)?;
        check_range("profit", self.profit_range)?;
        if self.profit_range.0 == 0 {
            return Err(ConfigError::ZeroProfit);
        }
        let m = self.num_requirements();
        if self.requests_per_customer.1 > m as u64 {
            return Err(ConfigError::TooManyRequests { requested: self.requests_per_customer.1, available: m });
        }
        Ok(())
    }
}

fn check_range(what: &'static str, (min, max): (u64, u64)) -> Result<(), ConfigError> {
    if min > max {
        return Err(ConfigError::EmptyRange { what, min, max });
    }
    Ok(())
}

/// Generates an instance; deterministic in `config`.
pub fn generate(config: &GeneratorConfig) -> Result<Instance, ConfigError> {
    config.validate()?;
    let mut rng = SearchRng::seed_from_u64(config.seed);
    let m = config.num_requirements();

    let mut offsets = Vec::with_capacity(config.levels.len() + 1);
    let mut costs = Vec::with_capacity(m);
    offsets.push(0);
    for level in &config.levels {
        for _ in 0..level.count {
            costs.push(rng.gen_range(level.cost_min..=level.cost_max));
        }
        offsets.push(costs.len());
    }

    let mut arcs = Vec::new();
    for (k, pair) in config.levels.windows(2).enumerate() {
        let (level, next) = (pair[0], pair[1]);
        for child in offsets[k]..offsets[k + 1] {
            let count = rng.gen_range(0..=level.max_parents.min(next.count));
            for p in index::sample(&mut rng, next.count, count) {
                arcs.push((offsets[k + 1] + p, child));
            }
        }
    }

    let (req_lo, req_hi) = config.requests_per_customer;
    let (w_lo, w_hi) = config.profit_range;
    let customers = (0..config.customer_count)
        .map(|_| {
            let profit = rng.gen_range(w_lo..=w_hi);
            let count = rng.gen_range(req_lo..=req_hi) as usize;
            Customer::new(profit, index::sample(&mut rng, m, count))
        })
        .collect();

    Ok(Instance::new(costs, arcs, customers)?)
}

/// `round_half_up(ratio × total cost)`, computed exactly.
pub fn budget_from_ratio(instance: &Instance, ratio: Ratio) -> Budget {
    Budget { bound: ratio.scale_round_half_up(instance.total_cost()), ratio: Some(ratio) }
}
