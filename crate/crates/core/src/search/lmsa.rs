//! Simulated annealing with the Lundy-Mees cooling schedule.

use rand::Rng;

use super::random::fill_random_feasible;
use super::{best_of_restarts, SearchParams, SearchResult, SearchRng};
use crate::model::{Budget, Instance, Selection};

/// Temperature schedule `T ← T / (1 + βT)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LundyMees {
    temperature: f64,
    beta: f64,
}

impl LundyMees {
    pub fn new(initial: f64, beta: f64) -> Self {
        Self { temperature: initial, beta }
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn cool(&mut self) {
        self.temperature /= 1.0 + self.beta * self.temperature;
    }
}

/// Annealing over 1-bit flips. Infeasible proposals are rejected; feasible
/// ones are accepted when they do not lose profit, else with probability
/// `exp(Δ/T)`. The schedule cools once per proposal. Each restart starts
/// from a fresh random feasible solution and runs `params.iterations` steps.
pub fn lmsa(instance: &Instance, budget: Budget, params: &SearchParams, rng: &mut SearchRng) -> SearchResult {
    let n = instance.num_customers();
    best_of_restarts(params.restarts, rng, |rng| {
        let mut sel = Selection::new(instance);
        let mut evaluations = fill_random_feasible(&mut sel, budget, rng);
        let mut best = SearchResult::of(&sel, 0);
        let mut schedule = LundyMees::new(params.lmsa_temperature, params.lmsa_beta);
        if n > 0 {
            for _ in 0..params.iterations {
                let j = rng.gen_range(0..n);
                let w = instance.profit(j) as f64;
                let (new_cost, delta) = if sel.is_selected(j) {
                    (sel.cost_if_removed(j), -w)
                } else {
                    (sel.cost_if_added(j), w)
                };
                evaluations += 1;
                if new_cost <= budget.bound
                    && (delta >= 0.0 || rng.gen::<f64>() < libm::exp(delta / schedule.temperature()))
                {
                    sel.flip(j);
                    if sel.profit() > best.profit {
                        best = SearchResult::of(&sel, 0);
                    }
                }
                schedule.cool();
            }
        }
        best.evaluations = evaluations;
        best
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::comm3;
    use proptest::prelude::*;

    #[test]
    fn comm3_default_schedule() {
        let inst = comm3();
        for seed in 0..20 {
            let p = SearchParams { iterations: 10_000, lmsa_temperature: 0.3, lmsa_beta: 1e-8, seed, ..SearchParams::default() };
            let r = lmsa(&inst, Budget::new(36), &p, &mut p.rng());
            assert!(r.profit <= 45 && r.cost <= 36);
        }
    }

    #[test]
    fn frozen_schedule_never_loses_profit_from_start() {
        // With β huge the temperature collapses after one step: only
        // non-worsening flips survive, so the walk never ends below its start.
        let inst = comm3();
        for seed in 0..50 {
            let p = SearchParams { iterations: 200, lmsa_beta: 1e300, seed, ..SearchParams::default() };
            let mut outer = p.rng();
            let mut inner = <SearchRng as rand::SeedableRng>::seed_from_u64(rand::RngCore::next_u64(&mut outer));
            let start = super::super::random_feasible(&inst, Budget::new(36), &mut inner);
            let r = lmsa(&inst, Budget::new(36), &p, &mut p.rng());
            assert!(r.profit >= inst.solution_profit(&start));
        }
    }

    proptest! {
        #[test]
        fn schedule_strictly_decreasing_and_positive(t0 in 1e-3f64..10.0, beta in 1e-9f64..10.0) {
            let mut s = LundyMees::new(t0, beta);
            for _ in 0..1000 {
                let before = s.temperature();
                s.cool();
                prop_assert!(s.temperature() > 0.0);
                prop_assert!(s.temperature() < before);
            }
        }
    }
}
