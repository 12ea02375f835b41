//! Greedy climbing search.
//!
//! Each iteration either adds the most profitable unselected customer (when
//! the current assignment is feasible) or drops a uniformly random selected
//! one (when it is not). The addition may overshoot the budget; later drops
//! repair it. Only feasible states can become the best-so-far.

use alloc::vec::Vec;

use rand::Rng;

use super::{best_of_restarts, SearchParams, SearchResult, SearchRng};
use crate::model::{Budget, Instance, Selection, Solution};

/// Customers by profit, descending; ties by lowest index.
fn greedy_order(instance: &Instance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..instance.num_customers()).collect();
    order.sort_by(|&a, &b| instance.profit(b).cmp(&instance.profit(a)).then(a.cmp(&b)));
    order
}

/// Runs `iterations` GCS iterations from `start`.
///
/// The loop body executes `iterations - 1` times after the initial state,
/// and every visited state is costed exactly once, so a run performs
/// exactly `iterations` cost evaluations.
pub fn gcs_from(
    instance: &Instance,
    budget: Budget,
    start: &Solution,
    iterations: u64,
    rng: &mut SearchRng,
) -> SearchResult {
    let order = greedy_order(instance);
    let mut sel = Selection::from_solution(instance, start);
    run(&mut sel, &order, budget, iterations, rng)
}

fn run(sel: &mut Selection<'_>, order: &[usize], budget: Budget, iterations: u64, rng: &mut SearchRng) -> SearchResult {
    let instance = sel.instance();
    let mut evaluations = 1;
    let mut feasible = sel.cost() <= budget.bound;
    let mut best = if feasible {
        SearchResult::of(sel, 0)
    } else {
        SearchResult::evaluate(instance, Solution::empty(instance.num_customers()), 0)
    };
    for _ in 1..iterations {
        if feasible {
            // saturated: nothing left to add, the step is a no-op
            if let Some(&j) = order.iter().find(|&&j| !sel.is_selected(j)) {
                sel.add(j);
            }
        } else {
            let k = rng.gen_range(0..sel.num_selected());
            let victim = sel.nth_selected(k).expect("infeasible implies a selected customer");
            sel.remove(victim);
        }
        evaluations += 1;
        feasible = sel.cost() <= budget.bound;
        if feasible && sel.profit() > best.profit {
            best = SearchResult::of(sel, 0);
        }
    }
    best.evaluations = evaluations;
    best
}

/// Best of `params.restarts` GCS runs of `params.iterations` iterations, each
/// from a uniformly random total assignment.
pub fn gcs(instance: &Instance, budget: Budget, params: &SearchParams, rng: &mut SearchRng) -> SearchResult {
    let order = greedy_order(instance);
    best_of_restarts(params.restarts, rng, |rng| {
        let mut sel = Selection::new(instance);
        for i in 0..instance.num_customers() {
            if rng.gen::<bool>() {
                sel.add(i);
            }
        }
        run(&mut sel, &order, budget, params.iterations, rng)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::comm3;
    use crate::model::Customer;
    use alloc::vec;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn comm3_first_move_adds_most_profitable_customer() {
        let inst = comm3();
        let mut rng = SearchRng::seed_from_u64(0);
        let r = gcs_from(&inst, Budget::new(36), &Solution::empty(3), 2, &mut rng);
        assert_eq!(r.best, Solution::new(vec![true, false, false]));
        assert_eq!(r.evaluations, 2);
    }

    #[test]
    fn ties_break_to_lowest_index() {
        let inst = Instance::new(vec![1, 1, 1], [], vec![
            Customer::new(5, [0]),
            Customer::new(9, [1]),
            Customer::new(9, [2]),
        ])
        .unwrap();
        let r = gcs_from(&inst, Budget::new(1), &Solution::empty(3), 2, &mut SearchRng::seed_from_u64(1));
        assert_eq!(r.best, Solution::new(vec![false, true, false]));
    }

    #[test]
    fn saturated_steps_are_no_ops() {
        let inst = comm3();
        let all = Solution::new(vec![true; 3]);
        let r = gcs_from(&inst, Budget::new(51), &all, 10, &mut SearchRng::seed_from_u64(3));
        assert_eq!(r.best, all);
        assert_eq!(r.evaluations, 10);
    }

    #[test]
    fn infeasible_start_without_repair_returns_all_zero() {
        let inst = comm3();
        let all = Solution::new(vec![true; 3]);
        let r = gcs_from(&inst, Budget::new(36), &all, 1, &mut SearchRng::seed_from_u64(3));
        assert_eq!(r.best, Solution::empty(3));
        assert_eq!((r.profit, r.cost, r.evaluations), (0, 0, 1));
    }

    #[test]
    fn comm3_many_seeds_bounded_and_feasible() {
        let inst = comm3();
        for seed in 0..100 {
            let p = SearchParams { iterations: 1000, seed, ..SearchParams::default() };
            let r = gcs(&inst, Budget::new(36), &p, &mut p.rng());
            assert!(r.profit <= 45);
            assert!(inst.is_feasible(&r.best, Budget::new(36)));
        }
    }

    #[test]
    fn evaluations_equal_gamma_times_restarts() {
        let inst = comm3();
        for (gamma, restarts) in [(1, 1), (7, 1), (1000, 1), (50, 4)] {
            let p = SearchParams { iterations: gamma, restarts, ..SearchParams::default() };
            let r = gcs(&inst, Budget::new(36), &p, &mut p.rng());
            assert_eq!(r.evaluations, gamma * restarts as u64);
        }
    }

    proptest! {
        #[test]
        fn best_profit_non_decreasing_in_gamma(seed in any::<u64>(), start in proptest::collection::vec(any::<bool>(), 3)) {
            let inst = comm3();
            let start = Solution::new(start);
            let mut last = 0;
            for gamma in 1..40 {
                let r = gcs_from(&inst, Budget::new(36), &start, gamma, &mut SearchRng::seed_from_u64(seed));
                prop_assert!(r.profit >= last);
                prop_assert!(r.cost <= 36);
                last = r.profit;
            }
        }
    }
}
