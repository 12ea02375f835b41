use rand::Rng;

use super::{best_of_restarts, SearchParams, SearchResult, SearchRng};
use crate::model::{Budget, Instance, Selection, Solution};

/// Uniform random total assignment, then random selected customers are
/// dropped until the cost fits. Returns the number of cost checks.
pub(crate) fn fill_random_feasible(sel: &mut Selection<'_>, budget: Budget, rng: &mut SearchRng) -> u64 {
    let n = sel.instance().num_customers();
    for i in 0..n {
        if rng.gen::<bool>() {
            sel.add(i);
        } else {
            sel.remove(i);
        }
    }
    let mut evaluations = 1;
    while sel.cost() > budget.bound {
        let k = rng.gen_range(0..sel.num_selected());
        let victim = sel.nth_selected(k).expect("cost > bound implies a selected customer");
        sel.remove(victim);
        evaluations += 1;
    }
    evaluations
}

/// A random feasible solution (see [`fill_random_feasible`] for the law).
pub fn random_feasible(instance: &Instance, budget: Budget, rng: &mut SearchRng) -> Solution {
    let mut sel = Selection::new(instance);
    fill_random_feasible(&mut sel, budget, rng);
    sel.to_solution()
}

/// Best of `params.iterations` independent [`random_feasible`] draws.
/// Restarts are not used: the draw count already sets the effort.
pub fn randomized_search(instance: &Instance, budget: Budget, params: &SearchParams, rng: &mut SearchRng) -> SearchResult {
    best_of_restarts(1, rng, |rng| {
        let mut sel = Selection::new(instance);
        let mut evaluations = fill_random_feasible(&mut sel, budget, rng);
        let mut best = SearchResult::of(&sel, 0);
        for _ in 1..params.iterations {
            evaluations += fill_random_feasible(&mut sel, budget, rng);
            if sel.profit() > best.profit {
                best = SearchResult::of(&sel, 0);
            }
        }
        best.evaluations = evaluations;
        best
    })
}
