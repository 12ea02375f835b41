//! Single solver runs and their JSON reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nrp_core::backbone::{enumerate_optima_capped, BackboneError, DEFAULT_ENUMERATION_CAP};
use nrp_core::search::ParamError;
use nrp_core::{
    abma_solve, AbmaError, AbmaParams, Algorithm, Budget, Instance, LevelTrace, SearchParams, SearchResult, SearchRng,
};
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

/// Everything `solve` can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Solver {
    Search(Algorithm),
    Abma,
    Exact,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Search(a) => a.name(),
            Solver::Abma => "abma",
            Solver::Exact => "exact",
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "abma" => Ok(Solver::Abma),
            "exact" => Ok(Solver::Exact),
            other => other.parse().map(Solver::Search),
        }
    }
}

impl TryFrom<String> for Solver {
    type Error = ParamError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Solver> for String {
    fn from(s: Solver) -> String {
        s.name().to_string()
    }
}

/// Flat parameter set shared by every solver; each reads what it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgoParams {
    /// Iterations per run (per operator call under ABMA).
    pub iterations: u64,
    /// Independent restarts; `None` means 1, or 10 for ABMA.
    pub restarts: Option<u32>,
    pub temperature: f64,
    pub beta: f64,
    pub local_optima: usize,
    pub stop_ratio: f64,
    /// Operator embedded in ABMA.
    #[serde(with = "algorithm_name")]
    pub operator: Algorithm,
}

mod algorithm_name {
    use nrp_core::Algorithm;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(a: &Algorithm, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(a.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Algorithm, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl Default for AlgoParams {
    fn default() -> Self {
        let abma = AbmaParams::default();
        let search = SearchParams::default();
        Self {
            iterations: search.iterations,
            restarts: None,
            temperature: search.lmsa_temperature,
            beta: search.lmsa_beta,
            local_optima: abma.local_optima_per_level,
            stop_ratio: abma.scale_stop_ratio,
            operator: abma.operator,
        }
    }
}

impl AlgoParams {
    pub fn restarts_for(&self, solver: Solver) -> u32 {
        self.restarts.unwrap_or(if solver == Solver::Abma { AbmaParams::default().restarts } else { 1 })
    }

    pub fn search_params(&self, restarts: u32, seed: u64) -> SearchParams {
        SearchParams {
            iterations: self.iterations,
            restarts,
            seed,
            lmsa_temperature: self.temperature,
            lmsa_beta: self.beta,
        }
    }

    pub fn abma_params(&self, seed: u64) -> AbmaParams {
        AbmaParams {
            restarts: self.restarts_for(Solver::Abma),
            local_optima_per_level: self.local_optima,
            operator: self.operator,
            operator_params: self.search_params(1, seed),
            scale_stop_ratio: self.stop_ratio,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub restart: u32,
    pub level: usize,
    pub customers_before: usize,
    pub customers_after: usize,
    pub backbone_size: usize,
    pub budget_after: u64,
    pub requirements_after: usize,
}

impl From<LevelTrace> for TraceRecord {
    fn from(t: LevelTrace) -> Self {
        Self {
            restart: t.restart,
            level: t.level,
            customers_before: t.customers_before,
            customers_after: t.customers_after,
            backbone_size: t.backbone_size,
            budget_after: t.budget_after,
            requirements_after: t.requirements_after,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance: String,
    pub algorithm: Solver,
    pub params: AlgoParams,
    pub seed: u64,
    pub profit: u64,
    pub cost: u64,
    pub budget: u64,
    /// Budget ratio when the bound came from one, e.g. `"0.7"`.
    pub ratio: Option<String>,
    pub elapsed_ms: f64,
    pub evaluations: u64,
    /// 1-based ids of the selected customers.
    pub selected: Vec<usize>,
    pub level_traces: Vec<TraceRecord>,
}

impl RunReport {
    /// Re-scores `selected` on `instance`; true when profit, cost and
    /// feasibility all agree with the report.
    pub fn revalidate(&self, instance: &Instance) -> bool {
        let n = instance.num_customers();
        if self.selected.iter().any(|&id| id == 0 || id > n) {
            return false;
        }
        let sol = nrp_core::Solution::from_selected(n, self.selected.iter().map(|id| id - 1));
        instance.solution_profit(&sol) == self.profit
            && instance.solution_cost(&sol) == self.cost
            && self.cost <= self.budget
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Abma(#[from] AbmaError),
    #[error(transparent)]
    Backbone(#[from] BackboneError),
}

/// Runs `solver` once with its own ChaCha8 stream seeded by `seed`.
pub fn solve(
    name: &str,
    instance: &Instance,
    budget: Budget,
    solver: Solver,
    params: &AlgoParams,
    seed: u64,
) -> Result<RunReport, SolveError> {
    let mut rng = SearchRng::seed_from_u64(seed);
    let start = Instant::now();
    let (result, traces): (SearchResult, Vec<LevelTrace>) = match solver {
        Solver::Search(a) => {
            let p = params.search_params(params.restarts_for(solver), seed);
            p.validate()?;
            (a.run(instance, budget, &p, &mut rng), Vec::new())
        }
        Solver::Abma => {
            let out = abma_solve(instance, budget, &params.abma_params(seed), &mut rng)?;
            (out.result, out.traces)
        }
        Solver::Exact => {
            let set = enumerate_optima_capped(instance, budget, DEFAULT_ENUMERATION_CAP)?;
            let best = set.solutions.into_iter().next().expect("the empty selection is always feasible");
            (SearchResult::evaluate(instance, best, 0), Vec::new())
        }
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(RunReport {
        instance: name.to_string(),
        algorithm: solver,
        params: *params,
        seed,
        profit: result.profit,
        cost: result.cost,
        budget: budget.bound,
        ratio: budget.ratio.map(|r| r.to_string()),
        elapsed_ms,
        evaluations: result.evaluations,
        selected: result.best.selected().map(|i| i + 1).collect(),
        level_traces: traces.into_iter().map(TraceRecord::from).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nrp_core::fixtures::comm3;
    use nrp_core::{budget_from_ratio, Ratio};

    #[test]
    fn exact_on_comm3() {
        let inst = comm3();
        let b = budget_from_ratio(&inst, "0.7".parse::<Ratio>().unwrap());
        assert_eq!(b.bound, 36);
        let r = solve("comm3", &inst, b, Solver::Exact, &AlgoParams::default(), 0).unwrap();
        assert_eq!((r.profit, r.cost, r.selected.clone()), (45, 35, vec![2, 3]));
        assert_eq!(r.ratio.as_deref(), Some("0.7"));
        assert!(r.revalidate(&inst));
    }

    #[test]
    fn every_solver_revalidates_and_is_deterministic() {
        let inst = comm3();
        for name in ["random", "hillclimb", "gcs", "lmsa", "abma", "exact"] {
            let s: Solver = name.parse().unwrap();
            let a = solve("c", &inst, Budget::new(36), s, &AlgoParams::default(), 1).unwrap();
            let b = solve("c", &inst, Budget::new(36), s, &AlgoParams::default(), 1).unwrap();
            assert!(a.revalidate(&inst), "{name}");
            assert!(a.profit <= 45);
            assert_eq!((a.selected, a.evaluations), (b.selected, b.evaluations));
        }
    }

    #[test]
    fn report_json_round_trip() {
        let inst = comm3();
        let r = solve("c", &inst, Budget::new(36), Solver::Abma, &AlgoParams::default(), 3).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(text.contains("\"algorithm\":\"abma\""));
    }

    #[test]
    fn restarts_default_per_solver() {
        let p = AlgoParams::default();
        assert_eq!(p.restarts_for(Solver::Abma), 10);
        assert_eq!(p.restarts_for(Solver::Search(Algorithm::Gcs)), 1);
        assert!("tabu".parse::<Solver>().is_err());
    }

    #[test]
    fn exact_refuses_large_instances() {
        let cfg = nrp_core::GeneratorConfig::preset("nrp-1", 0).unwrap();
        let inst = nrp_core::generate(&cfg).unwrap();
        let r = solve("big", &inst, Budget::new(10), Solver::Exact, &AlgoParams::default(), 0);
        assert!(matches!(r, Err(SolveError::Backbone(BackboneError::Capacity { .. }))));
    }
}
