//! Backbones and the reduce/refine pair.
//!
//! The backbone of an instance is the set of `(customer, bit)` pairs shared
//! by every global optimum. Computing it is as hard as solving the instance,
//! so the multilevel solver works with approximate backbones: the pairs
//! shared by a handful of local optima. Fixing such a partial assignment
//! removes those customers, charges the joint closure cost of the fixed-in
//! ones against the budget, and leaves a smaller instance; refining maps a
//! sub-solution back.
//!
//! For the reduction, implemented requirements stay in the sub-instance
//! with cost zero, so requirement indices never change between levels.
//! The identity the whole scheme relies on is
//!
//! ```text
//! profit(refine(x)) = profit_delta + profit_sub(x)
//! cost(refine(x))   = budget_delta + cost_sub(x)
//! ```
//!
//! for every sub-solution `x`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{Budget, Instance, Selection, Solution};

/// Largest customer count [`enumerate_optima`] accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackboneError {
    #[error("{customers} customers exceeds the enumeration cap of {cap}")]
    Capacity { customers: usize, cap: usize },
    #[error("cannot intersect an empty list of solutions")]
    EmptyList,
    #[error("solution spans {found} customers, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("fixed-in customers cost {cost}, over the budget of {bound}")]
    InfeasibleFixation { cost: u64, bound: u64 },
    #[error("customer index {index} out of range (n = {count})")]
    InvalidCustomer { index: usize, count: usize },
    #[error("customer {0} assigned both bits")]
    Conflict(usize),
}

/// A set of `(customer, bit)` pairs, at most one per customer.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    pairs: BTreeMap<usize, bool>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from pairs; a customer appearing with both bits is an error.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, bool)>) -> Result<Self, BackboneError> {
        let mut out = Self::new();
        for (i, b) in pairs {
            out.insert(i, b)?;
        }
        Ok(out)
    }

    pub fn insert(&mut self, customer: usize, bit: bool) -> Result<(), BackboneError> {
        match self.pairs.insert(customer, bit) {
            Some(prev) if prev != bit => {
                self.pairs.insert(customer, prev);
                Err(BackboneError::Conflict(customer))
            }
            _ => Ok(()),
        }
    }

    pub fn remove(&mut self, customer: usize) -> Option<bool> {
        self.pairs.remove(&customer)
    }

    pub fn get(&self, customer: usize) -> Option<bool> {
        self.pairs.get(&customer).copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in customer order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.pairs.iter().map(|(&i, &b)| (i, b))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.iter().filter(|&(_, b)| b).map(|(i, _)| i)
    }

    /// True when every pair appears in the ordered-pair form of `solution`.
    pub fn is_contained_in(&self, solution: &Solution) -> bool {
        self.iter().all(|(i, b)| i < solution.len() && solution.get(i) == b)
    }

    /// True when every pair of `self` is also in `other`.
    pub fn is_subset(&self, other: &PartialAssignment) -> bool {
        self.iter().all(|(i, b)| other.get(i) == Some(b))
    }
}

impl From<&Solution> for PartialAssignment {
    fn from(solution: &Solution) -> Self {
        Self { pairs: solution.pairs().collect() }
    }
}

/// All maximizers of an objective over the feasible assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimaSet<P = u64> {
    /// In ascending [`Solution`] order.
    pub solutions: Vec<Solution>,
    pub profit: P,
}

/// Depth-first enumeration with budget pruning: a customer is only tried
/// "in" when it still fits, so every leaf is feasible. Returns all leaves
/// maximizing `key`.
fn enumerate_by<K, F>(instance: &Instance, budget: Budget, cap: usize, key: F) -> Result<OptimaSet<K>, BackboneError>
where
    K: Ord + Clone,
    F: Fn(&Selection<'_>) -> K,
{
    let n = instance.num_customers();
    if n > cap {
        return Err(BackboneError::Capacity { customers: n, cap });
    }

    struct Walk<'a, K, F> {
        sel: Selection<'a>,
        bound: u64,
        key: F,
        best: Option<K>,
        found: Vec<Solution>,
    }

    impl<K: Ord + Clone, F: Fn(&Selection<'_>) -> K> Walk<'_, K, F> {
        fn visit(&mut self, depth: usize) {
            if depth == self.sel.bits().len() {
                let k = (self.key)(&self.sel);
                match self.best.as_ref().map(|b| k.cmp(b)) {
                    Some(core::cmp::Ordering::Less) => {}
                    Some(core::cmp::Ordering::Equal) => self.found.push(self.sel.to_solution()),
                    _ => {
                        self.best = Some(k);
                        self.found.clear();
                        self.found.push(self.sel.to_solution());
                    }
                }
                return;
            }
            self.visit(depth + 1);
            if self.sel.cost_if_added(depth) <= self.bound {
                self.sel.add(depth);
                self.visit(depth + 1);
                self.sel.remove(depth);
            }
        }
    }

    let mut walk = Walk { sel: Selection::new(instance), bound: budget.bound, key, best: None, found: Vec::new() };
    walk.visit(0);
    let mut solutions = walk.found;
    solutions.sort();
    Ok(OptimaSet { solutions, profit: walk.best.expect("the all-zero leaf is always feasible") })
}

/// Every global optimum, by exhaustive search. Refuses instances with more
/// than [`DEFAULT_ENUMERATION_CAP`] customers.
pub fn enumerate_optima(instance: &Instance, budget: Budget) -> Result<OptimaSet, BackboneError> {
    enumerate_optima_capped(instance, budget, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_optima_capped(instance: &Instance, budget: Budget, cap: usize) -> Result<OptimaSet, BackboneError> {
    enumerate_by(instance, budget, cap, |s| s.profit())
}

/// Pairs shared by every member of `optima`.
fn intersect(solutions: &[Solution]) -> Result<PartialAssignment, BackboneError> {
    let (first, rest) = solutions.split_first().ok_or(BackboneError::EmptyList)?;
    let mut out = PartialAssignment::from(first);
    for s in rest {
        if s.len() != first.len() {
            return Err(BackboneError::SizeMismatch { expected: first.len(), found: s.len() });
        }
        out.pairs.retain(|&i, b| s.get(i) == *b);
    }
    Ok(out)
}

/// The exact backbone: pairs shared by all global optima.
pub fn exact_backbone(instance: &Instance, budget: Budget) -> Result<PartialAssignment, BackboneError> {
    intersect(&enumerate_optima(instance, budget)?.solutions)
}

/// The approximate backbone of a set of (local optimum) solutions. Includes
/// both 1-pairs and 0-pairs.
pub fn approximate_backbone(solutions: &[Solution]) -> Result<PartialAssignment, BackboneError> {
    intersect(solutions)
}

/// Biased profit `ŵ_i = w_i + 2^-(i+1)` for zero-based customer `i`, kept
/// as its exact parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BiasedWeight {
    pub integer: u64,
    /// The fractional part is `2^-exponent`.
    pub exponent: u32,
}

/// Exact biased profit of a selection: the integer profit sum plus the
/// binary fraction `Σ 2^-(i+1)` over selected customers.
///
/// The fraction's digits are the selection bits themselves (customer 1 is
/// the most significant), so comparing `(integer, fraction)`
/// lexicographically is the exact order on biased profits at any `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiasedProfit {
    pub integer: u64,
    pub fraction: Vec<bool>,
}

impl BiasedProfit {
    /// Lossy value, for display only.
    pub fn to_f64(&self) -> f64 {
        let mut frac = 0.0;
        let mut scale = 0.5;
        for &b in &self.fraction {
            if b {
                frac += scale;
            }
            scale /= 2.0;
        }
        self.integer as f64 + frac
    }
}

/// An instance with profits perturbed by distinct powers of two, which has
/// a unique optimum that is also optimal for the original weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiasedInstance {
    base: Instance,
}

impl BiasedInstance {
    /// O(n): profits are already positive integers by construction of
    /// [`Instance`], so there is nothing to check beyond the wrap.
    pub fn new(instance: &Instance) -> Self {
        Self { base: instance.clone() }
    }

    /// The underlying structure with the original integer weights.
    pub fn instance(&self) -> &Instance {
        &self.base
    }

    pub fn weight(&self, customer: usize) -> BiasedWeight {
        BiasedWeight { integer: self.base.profit(customer), exponent: customer as u32 + 1 }
    }

    pub fn profit(&self, solution: &Solution) -> BiasedProfit {
        BiasedProfit { integer: self.base.solution_profit(solution), fraction: solution.bits().to_vec() }
    }

    pub fn enumerate_optima(&self, budget: Budget) -> Result<OptimaSet<BiasedProfit>, BackboneError> {
        self.enumerate_optima_capped(budget, DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_optima_capped(&self, budget: Budget, cap: usize) -> Result<OptimaSet<BiasedProfit>, BackboneError> {
        enumerate_by(&self.base, budget, cap, |s| BiasedProfit { integer: s.profit(), fraction: s.bits().to_vec() })
    }
}

/// Everything needed to map a sub-instance solution back one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionRecord {
    /// Fixed pairs, in the parent level's customer indices.
    pub fixed: PartialAssignment,
    /// Union of the fixed-in customers' closures.
    pub implemented_requirements: Vec<usize>,
    /// Cost of `implemented_requirements` priced in the parent level.
    pub budget_delta: u64,
    pub profit_delta: u64,
    /// Sub-instance customer index -> parent customer index.
    pub customer_index_map: Vec<usize>,
    pub parent_customers: usize,
}

/// Fixes `fixed` on `instance`, returning the smaller instance, its budget,
/// and the record for [`refine`].
pub fn reduce(
    instance: &Instance,
    budget: Budget,
    fixed: &PartialAssignment,
) -> Result<(Instance, Budget, ReductionRecord), BackboneError> {
    let n = instance.num_customers();
    if let Some((i, _)) = fixed.iter().find(|&(i, _)| i >= n) {
        return Err(BackboneError::InvalidCustomer { index: i, count: n });
    }
    let mut sel = Selection::new(instance);
    for i in fixed.ones() {
        sel.add(i);
    }
    if sel.cost() > budget.bound {
        return Err(BackboneError::InfeasibleFixation { cost: sel.cost(), bound: budget.bound });
    }

    let mut implemented = vec![false; instance.num_requirements()];
    for i in fixed.ones() {
        for &r in instance.closure_unchecked(i) {
            implemented[r] = true;
        }
    }
    let costs = instance.costs().iter().zip(&implemented).map(|(&c, &done)| if done { 0 } else { c }).collect();
    let keep: Vec<usize> = (0..n).filter(|&i| fixed.get(i).is_none()).collect();
    let sub = instance.with_costs(costs).with_customers(&keep);
    let sub_budget = Budget::new(budget.bound - sel.cost());
    let record = ReductionRecord {
        fixed: fixed.clone(),
        implemented_requirements: implemented.iter().enumerate().filter(|(_, &d)| d).map(|(r, _)| r).collect(),
        budget_delta: sel.cost(),
        profit_delta: sel.profit(),
        customer_index_map: keep,
        parent_customers: n,
    };
    Ok((sub, sub_budget, record))
}

/// Combines a sub-instance solution with the record's fixed pairs.
pub fn refine(sub_solution: &Solution, record: &ReductionRecord) -> Result<Solution, BackboneError> {
    if sub_solution.len() != record.customer_index_map.len() {
        return Err(BackboneError::SizeMismatch {
            expected: record.customer_index_map.len(),
            found: sub_solution.len(),
        });
    }
    let mut out = Solution::empty(record.parent_customers);
    for (i, b) in record.fixed.iter() {
        out.set(i, b);
    }
    for (sub, &orig) in record.customer_index_map.iter().enumerate() {
        out.set(orig, sub_solution.get(sub));
    }
    Ok(out)
}

/// Refines through a stack of records, innermost (last) first.
pub fn refine_through(sub_solution: &Solution, records: &[ReductionRecord]) -> Result<Solution, BackboneError> {
    records.iter().rev().try_fold(sub_solution.clone(), |s, rec| refine(&s, rec))
}
