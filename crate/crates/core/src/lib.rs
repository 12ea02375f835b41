//! Solver toolkit for the next release problem (NRP).
//!
//! An instance is a set of requirements with costs, a dependency DAG over
//! them, and customers who each pay a profit once every requirement they
//! request (and all transitive prerequisites) ships. A solution assigns one
//! bit per customer; it is feasible when the union of the selected
//! customers' requirement closures fits in the budget.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and
//! the command line live in the companion `nrp` crate.
//!
//! Modules:
//!
//! - [`model`]: instance, solution, closures, union cost, Hamming distance.
//! - [`search`]: randomized search, hill climbing, greedy climbing search
//!   (GCS) and Lundy-Mees simulated annealing behind [`search::LocalSearch`].
//! - [`backbone`]: exhaustive optima oracle, biased instances, approximate
//!   backbones, and the reduce/refine pair.
//! - [`abma`]: the approximate-backbone multilevel driver.
//! - [`instgen`]: level-structured random instance generator and budgets.
//! - [`landscape`]: local-optima sampling against a reference solution.
#![cfg_attr(not(test), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod abma;
pub mod backbone;
pub mod fixtures;
pub mod instgen;
pub mod landscape;
pub mod model;
pub mod search;

pub use abma::{abma_solve, abma_solve_with, AbmaError, AbmaOutcome, AbmaParams, LevelTrace};
pub use backbone::{
    approximate_backbone, enumerate_optima, exact_backbone, reduce, refine, BiasedInstance,
    BiasedProfit, OptimaSet, PartialAssignment, ReductionRecord,
};
pub use instgen::{budget_from_ratio, generate, GeneratorConfig, LevelSpec, Ratio};
pub use model::{Budget, Customer, Instance, ModelError, Solution};
pub use search::{Algorithm, LocalSearch, SearchParams, SearchResult, SearchRng};
