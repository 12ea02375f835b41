//! Fitness-landscape sampling: where do an operator's local optima sit
//! relative to a reference (ideally globally optimal) solution?

use alloc::vec::Vec;

use rand::{RngCore, SeedableRng};

use crate::model::{Budget, Instance, ModelError, Solution};
use crate::search::{LocalSearch, SearchRng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandscapePoint {
    /// Hamming distance to the reference divided by `n`.
    pub distance: f64,
    /// Profit divided by the reference profit.
    pub profit: f64,
    pub raw_distance: usize,
    pub raw_profit: u64,
}

/// Runs `operator` for `rounds` independent rounds (one seed per round,
/// drawn from `rng` up front) and places each result against `reference`.
pub fn sample_landscape<H: LocalSearch + ?Sized>(
    instance: &Instance,
    budget: Budget,
    reference: &Solution,
    operator: &mut H,
    rounds: usize,
    rng: &mut SearchRng,
) -> Result<Vec<LandscapePoint>, ModelError> {
    let n = instance.num_customers();
    if reference.len() != n {
        return Err(ModelError::SizeMismatch { left: reference.len(), right: n });
    }
    let ref_profit = instance.solution_profit(reference);
    let seeds: Vec<u64> = (0..rounds).map(|_| rng.next_u64()).collect();
    seeds
        .into_iter()
        .map(|seed| {
            let r = operator.search(instance, budget, &mut SearchRng::seed_from_u64(seed));
            let d = r.best.hamming_distance(reference)?;
            Ok(LandscapePoint {
                distance: if n == 0 { 0.0 } else { d as f64 / n as f64 },
                profit: if ref_profit == 0 { 1.0 } else { r.profit as f64 / ref_profit as f64 },
                raw_distance: d,
                raw_profit: r.profit,
            })
        })
        .collect()
}

pub fn mean_distance(points: &[LandscapePoint]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    points.iter().map(|p| p.distance).sum::<f64>() / points.len() as f64
}
