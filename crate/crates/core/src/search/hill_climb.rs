use super::random::fill_random_feasible;
use super::{best_of_restarts, SearchParams, SearchResult, SearchRng};
use crate::model::{Budget, Instance, Selection, Solution};

/// Steepest ascent over feasible 1-flip neighbours.
///
/// Dropping a customer always loses profit, so the improving neighbours are
/// exactly the affordable additions; the steepest one is the most
/// profitable (lowest index on ties). Stops at a 1-flip local optimum or
/// after `max_moves` moves.
pub(crate) fn climb(sel: &mut Selection<'_>, budget: Budget, max_moves: u64) -> u64 {
    let n = sel.instance().num_customers();
    let mut evaluations = 0;
    for _ in 0..max_moves {
        let mut pick: Option<usize> = None;
        for j in (0..n).filter(|&j| !sel.is_selected(j)) {
            evaluations += 1;
            if sel.cost_if_added(j) <= budget.bound
                && pick.is_none_or(|p| sel.instance().profit(j) > sel.instance().profit(p))
            {
                pick = Some(j);
            }
        }
        match pick {
            Some(j) => sel.add(j),
            None => break,
        }
    }
    evaluations
}

/// Climbs from a given feasible start.
pub fn hill_climb_from(instance: &Instance, budget: Budget, start: &Solution, max_moves: u64) -> SearchResult {
    let mut sel = Selection::from_solution(instance, start);
    let evaluations = climb(&mut sel, budget, max_moves);
    SearchResult::of(&sel, evaluations)
}

/// Best of `params.restarts` climbs, each from a fresh random feasible start.
pub fn hill_climb(instance: &Instance, budget: Budget, params: &SearchParams, rng: &mut SearchRng) -> SearchResult {
    best_of_restarts(params.restarts, rng, |rng| {
        let mut sel = Selection::new(instance);
        let mut evaluations = fill_random_feasible(&mut sel, budget, rng);
        evaluations += climb(&mut sel, budget, params.iterations);
        SearchResult::of(&sel, evaluations)
    })
}
