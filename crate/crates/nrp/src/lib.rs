//! Standard-library companion to `nrp-core`: the instance text format,
//! generator configs, run reports, landscape CSVs, the comparison harness
//! and the `nrp` command line.

pub mod config;
pub mod experiment;
pub mod format;
pub mod landscape;
pub mod report;

pub use format::{read_instance, write_instance, FormatError, InstanceFile};
pub use report::{solve, AlgoParams, RunReport, Solver};
