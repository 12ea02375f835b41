//! Landscape CSV: local optima placed against a reference solution.

use std::fmt::Write as _;

use nrp_core::backbone::{enumerate_optima_capped, DEFAULT_ENUMERATION_CAP};
use nrp_core::landscape::{sample_landscape, LandscapePoint};
use nrp_core::{abma_solve, AbmaParams, Algorithm, Budget, Instance, SearchParams, SearchRng, Solution};
use rand::SeedableRng;

use crate::report::SolveError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceKind {
    /// Proven optimum from exhaustive enumeration.
    Exact,
    /// Best solution of a long ABMA run; not claimed optimal.
    BestKnown,
}

impl ReferenceKind {
    pub fn label(self) -> &'static str {
        match self {
            ReferenceKind::Exact => "exact",
            ReferenceKind::BestKnown => "best-known",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub kind: ReferenceKind,
    pub solution: Solution,
    pub profit: u64,
}

/// Exact optimum when enumeration is within the cap, else the best of a
/// 10-restart ABMA run with 10⁴ GCS iterations per operator call.
pub fn reference(instance: &Instance, budget: Budget, seed: u64) -> Result<Reference, SolveError> {
    if instance.num_customers() <= DEFAULT_ENUMERATION_CAP {
        let set = enumerate_optima_capped(instance, budget, DEFAULT_ENUMERATION_CAP)?;
        let solution = set.solutions.into_iter().next().expect("the empty selection is always feasible");
        return Ok(Reference { kind: ReferenceKind::Exact, solution, profit: set.profit });
    }
    let params = AbmaParams {
        operator_params: SearchParams { iterations: 10_000, restarts: 1, seed, ..SearchParams::default() },
        ..AbmaParams::default()
    };
    let out = abma_solve(instance, budget, &params, &mut SearchRng::seed_from_u64(seed))?;
    Ok(Reference { kind: ReferenceKind::BestKnown, solution: out.result.best, profit: out.result.profit })
}

/// Samples `rounds` local optima of `algorithm` against `reference`.
pub fn landscape(
    instance: &Instance,
    budget: Budget,
    reference: &Reference,
    algorithm: Algorithm,
    params: SearchParams,
    rounds: usize,
    seed: u64,
) -> Result<Vec<LandscapePoint>, SolveError> {
    params.validate()?;
    let mut op = algorithm.with(params);
    let mut rng = SearchRng::seed_from_u64(seed);
    Ok(sample_landscape(instance, budget, &reference.solution, &mut op, rounds, &mut rng)
        .expect("reference sized to the instance"))
}

/// Two `#` comment lines naming the reference, the column header, then one
/// row per point.
pub fn to_csv(reference: &Reference, algorithm: Algorithm, points: &[LandscapePoint]) -> String {
    let mut out = String::new();
    writeln!(out, "# reference: {} (profit {})", reference.kind.label(), reference.profit).unwrap();
    writeln!(out, "# algorithm: {algorithm}").unwrap();
    writeln!(out, "normalized_distance,normalized_profit").unwrap();
    for p in points {
        writeln!(out, "{},{}", p.distance, p.profit).unwrap();
    }
    out
}
