//! Local-search operators over the 1-bit-flip solution space.
//!
//! Every operator returns a feasible [`SearchResult`]; the all-zero
//! assignment is always available as a fallback. Restarts draw their seeds
//! from the caller's generator up front, so each restart owns an
//! independent stream and the aggregate is the same whether restarts run
//! serially or in parallel.

mod gcs;
mod hill_climb;
mod lmsa;
mod random;

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{RngCore, SeedableRng};
use thiserror::Error;

use crate::model::{Budget, Instance, Selection, Solution};

pub use gcs::{gcs, gcs_from};
pub use hill_climb::{hill_climb, hill_climb_from};
pub use lmsa::{lmsa, LundyMees};
pub use random::{random_feasible, randomized_search};

/// Portable seeded generator used by every randomized routine.
pub type SearchRng = rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("iterations must be at least 1")]
    ZeroIterations,
    #[error("restarts must be at least 1")]
    ZeroRestarts,
    #[error("annealing temperature must be positive and finite, got {0}")]
    Temperature(f64),
    #[error("cooling parameter beta must be positive and finite, got {0}")]
    Beta(f64),
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(alloc::string::String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchParams {
    /// Iterations per run (GCS `γ`, annealing steps, climb moves, random draws).
    pub iterations: u64,
    pub restarts: u32,
    pub seed: u64,
    /// Initial annealing temperature `T₀`.
    pub lmsa_temperature: f64,
    /// Lundy-Mees cooling parameter.
    pub lmsa_beta: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self { iterations: 1000, restarts: 1, seed: 0, lmsa_temperature: 0.3, lmsa_beta: 1e-8 }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.iterations == 0 {
            return Err(ParamError::ZeroIterations);
        }
        if self.restarts == 0 {
            return Err(ParamError::ZeroRestarts);
        }
        if !(self.lmsa_temperature > 0.0 && self.lmsa_temperature.is_finite()) {
            return Err(ParamError::Temperature(self.lmsa_temperature));
        }
        if !(self.lmsa_beta > 0.0 && self.lmsa_beta.is_finite()) {
            return Err(ParamError::Beta(self.lmsa_beta));
        }
        Ok(())
    }

    pub fn rng(&self) -> SearchRng {
        SearchRng::seed_from_u64(self.seed)
    }
}

/// Best feasible solution found by a search, with its score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub best: Solution,
    pub profit: u64,
    pub cost: u64,
    /// Number of solution cost evaluations performed.
    pub evaluations: u64,
}

impl SearchResult {
    pub(crate) fn of(selection: &Selection<'_>, evaluations: u64) -> Self {
        Self {
            best: selection.to_solution(),
            profit: selection.profit(),
            cost: selection.cost(),
            evaluations,
        }
    }

    /// Scores `solution` on `instance`.
    pub fn evaluate(instance: &Instance, solution: Solution, evaluations: u64) -> Self {
        Self {
            profit: instance.solution_profit(&solution),
            cost: instance.solution_cost(&solution),
            best: solution,
            evaluations,
        }
    }
}

/// A local-search operator producing one (local) optimum per call.
pub trait LocalSearch {
    fn search(&mut self, instance: &Instance, budget: Budget, rng: &mut SearchRng) -> SearchResult;
}

impl<F> LocalSearch for F
where
    F: FnMut(&Instance, Budget, &mut SearchRng) -> SearchResult,
{
    fn search(&mut self, instance: &Instance, budget: Budget, rng: &mut SearchRng) -> SearchResult {
        self(instance, budget, rng)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Random,
    HillClimb,
    Gcs,
    Lmsa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Random, Algorithm::HillClimb, Algorithm::Gcs, Algorithm::Lmsa];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Random => "random",
            Algorithm::HillClimb => "hillclimb",
            Algorithm::Gcs => "gcs",
            Algorithm::Lmsa => "lmsa",
        }
    }

    pub fn run(self, instance: &Instance, budget: Budget, params: &SearchParams, rng: &mut SearchRng) -> SearchResult {
        match self {
            Algorithm::Random => randomized_search(instance, budget, params, rng),
            Algorithm::HillClimb => hill_climb(instance, budget, params, rng),
            Algorithm::Gcs => gcs(instance, budget, params, rng),
            Algorithm::Lmsa => lmsa(instance, budget, params, rng),
        }
    }

    /// Binds parameters, giving a [`LocalSearch`] operator.
    pub fn with(self, params: SearchParams) -> Operator {
        Operator { algorithm: self, params }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Algorithm::Random),
            "hillclimb" | "hill-climb" | "hill_climb" => Ok(Algorithm::HillClimb),
            "gcs" => Ok(Algorithm::Gcs),
            "lmsa" => Ok(Algorithm::Lmsa),
            other => Err(ParamError::UnknownAlgorithm(other.into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator {
    pub algorithm: Algorithm,
    pub params: SearchParams,
}

impl LocalSearch for Operator {
    fn search(&mut self, instance: &Instance, budget: Budget, rng: &mut SearchRng) -> SearchResult {
        self.algorithm.run(instance, budget, &self.params, rng)
    }
}

/// Draws one seed per restart, runs each on its own stream and keeps the
/// best by profit (ties: lowest restart index). Evaluations are summed.
pub(crate) fn best_of_restarts(
    restarts: u32,
    rng: &mut SearchRng,
    mut run: impl FnMut(&mut SearchRng) -> SearchResult,
) -> SearchResult {
    let seeds: Vec<u64> = (0..restarts.max(1)).map(|_| rng.next_u64()).collect();
    let mut best: Option<SearchResult> = None;
    let mut evaluations = 0;
    for seed in seeds {
        let r = run(&mut SearchRng::seed_from_u64(seed));
        evaluations += r.evaluations;
        if best.as_ref().is_none_or(|b| r.profit > b.profit) {
            best = Some(r);
        }
    }
    let mut best = best.expect("at least one restart");
    best.evaluations = evaluations;
    best
}
