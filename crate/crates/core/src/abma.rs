//! Approximate-backbone multilevel algorithm (ABMA).
//!
//! One restart runs the following loop:
//!
//! 1. run the operator `local_optima_per_level` times on the current
//!    (sub-)instance and intersect the results into an approximate backbone;
//! 2. fix the backbone with [`reduce`], pushing the record on a stack;
//! 3. repeat until the current customer count drops below
//!    `scale_stop_ratio × n` (with `n` the original count) or the backbone
//!    comes back empty;
//! 4. solve the last sub-instance with the operator and [`refine`] the
//!    result back through the stack.
//!
//! Every local optimum seen along the way is also refined to a whole
//! solution and competes for the restart's result. The overall result is
//! the best restart (lowest restart index on ties).
//!
//! Fixing `n'` of `n` customers shrinks the assignment space from `2^n`
//! to `2^(n-n')`: for `n = 100, n' = 30`, from about `1.3e30` to `1.2e21`.
//! One reduction rarely gets a large instance small enough, hence the
//! repeated levels.
//!
//! [`refine`]: crate::backbone::refine

use alloc::vec::Vec;

use rand::{RngCore, SeedableRng};
use thiserror::Error;

use crate::backbone::{approximate_backbone, reduce, refine_through, BackboneError, PartialAssignment, ReductionRecord};
use crate::model::{Budget, Instance, Solution};
use crate::search::{Algorithm, LocalSearch, ParamError, SearchParams, SearchResult, SearchRng};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AbmaError {
    #[error("local_optima_per_level must be at least 2, got {0}")]
    TooFewLocalOptima(usize),
    #[error("scale_stop_ratio must lie in (0, 1), got {0}")]
    StopRatio(f64),
    #[error("restarts must be at least 1")]
    ZeroRestarts,
    #[error(transparent)]
    Operator(#[from] ParamError),
    #[error(transparent)]
    Backbone(#[from] BackboneError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbmaParams {
    pub restarts: u32,
    pub local_optima_per_level: usize,
    pub operator: Algorithm,
    /// Parameters of each operator call (one call = one local optimum).
    pub operator_params: SearchParams,
    pub scale_stop_ratio: f64,
}

impl Default for AbmaParams {
    fn default() -> Self {
        Self {
            restarts: 10,
            local_optima_per_level: 10,
            operator: Algorithm::Gcs,
            operator_params: SearchParams { iterations: 1000, restarts: 1, ..SearchParams::default() },
            scale_stop_ratio: 0.3,
        }
    }
}

impl AbmaParams {
    pub fn validate(&self) -> Result<(), AbmaError> {
        if self.restarts == 0 {
            return Err(AbmaError::ZeroRestarts);
        }
        if self.local_optima_per_level < 2 {
            return Err(AbmaError::TooFewLocalOptima(self.local_optima_per_level));
        }
        if !(self.scale_stop_ratio > 0.0 && self.scale_stop_ratio < 1.0) {
            return Err(AbmaError::StopRatio(self.scale_stop_ratio));
        }
        self.operator_params.validate()?;
        Ok(())
    }
}

/// One reduction step of one restart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelTrace {
    pub restart: u32,
    /// 1-based level number within the restart.
    pub level: usize,
    pub customers_before: usize,
    pub customers_after: usize,
    pub backbone_size: usize,
    pub budget_after: u64,
    /// Requirements still carrying a nonzero cost after the reduction.
    pub requirements_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbmaOutcome {
    pub result: SearchResult,
    /// Level traces of every restart, in restart order.
    pub traces: Vec<LevelTrace>,
}

/// ABMA with the operator named in `params`.
pub fn abma_solve(
    instance: &Instance,
    budget: Budget,
    params: &AbmaParams,
    rng: &mut SearchRng,
) -> Result<AbmaOutcome, AbmaError> {
    let mut op = params.operator.with(params.operator_params);
    abma_solve_with(instance, budget, params, &mut op, rng)
}

/// ABMA with an arbitrary operator. `params.operator` is ignored.
pub fn abma_solve_with<H: LocalSearch + ?Sized>(
    instance: &Instance,
    budget: Budget,
    params: &AbmaParams,
    operator: &mut H,
    rng: &mut SearchRng,
) -> Result<AbmaOutcome, AbmaError> {
    params.validate()?;
    let seeds: Vec<u64> = (0..params.restarts).map(|_| rng.next_u64()).collect();
    let mut best = SearchResult::evaluate(instance, Solution::empty(instance.num_customers()), 0);
    let mut evaluations = 0;
    let mut traces = Vec::new();
    for (restart, seed) in seeds.into_iter().enumerate() {
        let mut rng = SearchRng::seed_from_u64(seed);
        let run = Restart::new(instance, budget, restart as u32).run(params, operator, &mut rng, &mut traces)?;
        evaluations += run.evaluations;
        if run.profit > best.profit {
            best = run;
        }
    }
    best.evaluations = evaluations;
    Ok(AbmaOutcome { result: best, traces })
}

struct Restart<'a> {
    original: &'a Instance,
    budget: Budget,
    index: u32,
    best: SearchResult,
    evaluations: u64,
}

impl<'a> Restart<'a> {
    fn new(original: &'a Instance, budget: Budget, index: u32) -> Self {
        let best = SearchResult::evaluate(original, Solution::empty(original.num_customers()), 0);
        Self { original, budget, index, best, evaluations: 0 }
    }

    /// Refines a sub-instance solution to the original and keeps it if it is
    /// feasible and strictly better.
    fn offer(&mut self, sub: &Solution, stack: &[ReductionRecord]) -> Result<(), AbmaError> {
        let full = refine_through(sub, stack)?;
        if full.len() != self.original.num_customers() {
            return Err(BackboneError::SizeMismatch { expected: self.original.num_customers(), found: full.len() }.into());
        }
        let cost = self.original.solution_cost(&full);
        let profit = self.original.solution_profit(&full);
        if cost <= self.budget.bound && profit > self.best.profit {
            self.best = SearchResult { best: full, profit, cost, evaluations: 0 };
        }
        Ok(())
    }

    fn call<H: LocalSearch + ?Sized>(&mut self, op: &mut H, inst: &Instance, budget: Budget, rng: &mut SearchRng) -> Solution {
        let r = op.search(inst, budget, rng);
        self.evaluations += r.evaluations;
        r.best
    }

    fn run<H: LocalSearch + ?Sized>(
        mut self,
        params: &AbmaParams,
        op: &mut H,
        rng: &mut SearchRng,
        traces: &mut Vec<LevelTrace>,
    ) -> Result<SearchResult, AbmaError> {
        let threshold = params.scale_stop_ratio * self.original.num_customers() as f64;
        let mut stack: Vec<ReductionRecord> = Vec::new();
        let mut current = self.original.clone();
        let mut budget = self.budget;

        while current.num_customers() > 0 && current.num_customers() as f64 >= threshold {
            let optima: Vec<Solution> =
                (0..params.local_optima_per_level).map(|_| self.call(op, &current, budget, rng)).collect();
            for s in &optima {
                self.offer(s, &stack)?;
            }
            let mut bone = approximate_backbone(&optima)?;
            if bone.is_empty() {
                break;
            }
            let Some((sub, sub_budget, record)) = reduce_or_shrink(&current, budget, &mut bone)? else {
                break;
            };
            traces.push(LevelTrace {
                restart: self.index,
                level: stack.len() + 1,
                customers_before: current.num_customers(),
                customers_after: sub.num_customers(),
                backbone_size: bone.len(),
                budget_after: sub_budget.bound,
                requirements_after: sub.active_requirements(),
            });
            stack.push(record);
            current = sub;
            budget = sub_budget;
        }

        let terminal = self.call(op, &current, budget, rng);
        self.offer(&terminal, &stack)?;
        self.best.evaluations = self.evaluations;
        Ok(self.best)
    }
}

/// Reduces by `bone`; when its 1-pairs overshoot the budget, drops them in
/// increasing-profit order (lowest index first on ties) until the rest
/// fits. Returns `None` if nothing is left to fix.
fn reduce_or_shrink(
    instance: &Instance,
    budget: Budget,
    bone: &mut PartialAssignment,
) -> Result<Option<(Instance, Budget, ReductionRecord)>, AbmaError> {
    let mut ones: Vec<usize> = bone.ones().collect();
    ones.sort_by_key(|&i| (instance.profit(i), i));
    let mut drop = ones.into_iter();
    loop {
        if bone.is_empty() {
            return Ok(None);
        }
        match reduce(instance, budget, bone) {
            Ok(r) => return Ok(Some(r)),
            Err(BackboneError::InfeasibleFixation { .. }) => {
                let i = drop.next().expect("an infeasible fixation has a 1-pair");
                bone.remove(i);
            }
            Err(e) => return Err(e.into()),
        }
    }
}
