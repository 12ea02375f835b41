//! Instance data model, requirement closures and solution scoring.
//!
//! Indices are zero-based throughout the crate. Customer `i` here is
//! customer `i + 1` in the text formats, likewise for requirements.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("requirement index {index} out of range (m = {count})")]
    InvalidRequirement { index: usize, count: usize },
    #[error("customer index {index} out of range (n = {count})")]
    InvalidCustomer { index: usize, count: usize },
    #[error("dependency arc {parent} -> {child} closes a cycle")]
    Cycle { parent: usize, child: usize },
    #[error("customer {index} has zero profit")]
    ZeroProfit { index: usize },
    #[error("solutions span {left} and {right} customers")]
    SizeMismatch { left: usize, right: usize },
    #[error("ratio {num}/{den} is outside [0, 1]")]
    RatioOutOfRange { num: u64, den: u64 },
    #[error("malformed ratio")]
    MalformedRatio,
}

/// A customer: profit paid when every requested requirement ships.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Customer {
    pub profit: u64,
    pub requested: Vec<usize>,
}

impl Customer {
    pub fn new(profit: u64, requested: impl IntoIterator<Item = usize>) -> Self {
        Self { profit, requested: requested.into_iter().collect() }
    }
}

/// An NRP instance with precomputed customer closures.
///
/// Immutable after construction. Arcs are `(parent, child)`: the child
/// depends on the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    costs: Vec<u64>,
    arcs: Vec<(usize, usize)>,
    parents: Vec<Vec<usize>>,
    customers: Vec<Customer>,
    closures: Vec<Vec<usize>>,
}

impl Instance {
    /// Validates ids and acyclicity, canonicalizes arcs and request sets,
    /// and computes every customer closure.
    pub fn new(
        costs: Vec<u64>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
        customers: Vec<Customer>,
    ) -> Result<Self, ModelError> {
        let m = costs.len();
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        for &(p, c) in &arcs {
            for r in [p, c] {
                if r >= m {
                    return Err(ModelError::InvalidRequirement { index: r, count: m });
                }
            }
        }
        arcs.sort_unstable();
        arcs.dedup();

        let mut parents = vec![Vec::new(); m];
        for &(p, c) in &arcs {
            parents[c].push(p);
        }
        if let Some((p, c)) = find_cycle_arc(m, &arcs) {
            return Err(ModelError::Cycle { parent: p, child: c });
        }

        let mut customers = customers;
        for (i, cust) in customers.iter_mut().enumerate() {
            if cust.profit == 0 {
                return Err(ModelError::ZeroProfit { index: i });
            }
            if let Some(&r) = cust.requested.iter().find(|&&r| r >= m) {
                return Err(ModelError::InvalidRequirement { index: r, count: m });
            }
            cust.requested.sort_unstable();
            cust.requested.dedup();
        }

        let mut inst = Self { costs, arcs, parents, customers, closures: Vec::new() };
        inst.closures = inst
            .customers
            .iter()
            .map(|c| {
                let mut seen = vec![false; m];
                let mut out = Vec::new();
                let mut stack: Vec<usize> = c.requested.clone();
                while let Some(r) = stack.pop() {
                    if !core::mem::replace(&mut seen[r], true) {
                        out.push(r);
                        stack.extend(inst.parents[r].iter().copied());
                    }
                }
                out.sort_unstable();
                out
            })
            .collect();
        Ok(inst)
    }

    /// Same structure with requirement costs replaced. Used by reduction to
    /// zero out implemented requirements.
    pub(crate) fn with_costs(&self, costs: Vec<u64>) -> Self {
        debug_assert_eq!(costs.len(), self.costs.len());
        Self { costs, ..self.clone() }
    }

    /// Same structure restricted to the given customers, in the given order.
    pub(crate) fn with_customers(&self, keep: &[usize]) -> Self {
        Self {
            customers: keep.iter().map(|&i| self.customers[i].clone()).collect(),
            closures: keep.iter().map(|&i| self.closures[i].clone()).collect(),
            ..self.clone()
        }
    }

    pub fn num_requirements(&self) -> usize {
        self.costs.len()
    }

    pub fn num_customers(&self) -> usize {
        self.customers.len()
    }

    pub fn costs(&self) -> &[u64] {
        &self.costs
    }

    pub fn total_cost(&self) -> u64 {
        self.costs.iter().sum()
    }

    /// Canonical (sorted, deduplicated) arc list.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn customers(&self) -> &[Customer] {
        &self.customers
    }

    pub fn profit(&self, customer: usize) -> u64 {
        self.customers[customer].profit
    }

    /// Requirements with a nonzero cost. Reduced instances keep implemented
    /// requirements at cost zero, so this is the "scale" of a sub-instance.
    pub fn active_requirements(&self) -> usize {
        self.costs.iter().filter(|&&c| c > 0).count()
    }

    /// All requirements that reach some member of `reqs` via one or more arcs.
    pub fn transitive_parents(&self, reqs: &BTreeSet<usize>) -> Result<BTreeSet<usize>, ModelError> {
        let m = self.num_requirements();
        if let Some(&r) = reqs.iter().find(|&&r| r >= m) {
            return Err(ModelError::InvalidRequirement { index: r, count: m });
        }
        let mut out = BTreeSet::new();
        let mut stack: Vec<usize> = reqs.iter().flat_map(|&r| self.parents[r].iter().copied()).collect();
        while let Some(r) = stack.pop() {
            if out.insert(r) {
                stack.extend(self.parents[r].iter().copied());
            }
        }
        Ok(out)
    }

    /// Requested requirements plus their transitive parents, sorted.
    pub fn closure(&self, customer: usize) -> Result<&[usize], ModelError> {
        self.closures
            .get(customer)
            .map(Vec::as_slice)
            .ok_or(ModelError::InvalidCustomer { index: customer, count: self.num_customers() })
    }

    pub(crate) fn closure_unchecked(&self, customer: usize) -> &[usize] {
        &self.closures[customer]
    }

    /// Cost of the union of the selected customers' closures. Shared
    /// requirements are paid once.
    ///
    /// Panics if the solution does not span this instance's customers.
    pub fn solution_cost(&self, solution: &Solution) -> u64 {
        assert_eq!(solution.len(), self.num_customers(), "solution size mismatch");
        let mut implemented = vec![false; self.num_requirements()];
        let mut cost = 0;
        for i in solution.selected() {
            for &r in &self.closures[i] {
                if !core::mem::replace(&mut implemented[r], true) {
                    cost += self.costs[r];
                }
            }
        }
        cost
    }

    /// Sum of the selected customers' profits.
    ///
    /// Panics if the solution does not span this instance's customers.
    pub fn solution_profit(&self, solution: &Solution) -> u64 {
        assert_eq!(solution.len(), self.num_customers(), "solution size mismatch");
        solution.selected().map(|i| self.customers[i].profit).sum()
    }

    pub fn is_feasible(&self, solution: &Solution, budget: Budget) -> bool {
        self.solution_cost(solution) <= budget.bound
    }
}

/// Returns the first arc (in canonical order) whose insertion closes a cycle.
fn find_cycle_arc(m: usize, arcs: &[(usize, usize)]) -> Option<(usize, usize)> {
    // Kahn's algorithm first; only search for the culprit when it fails.
    let mut indeg = vec![0usize; m];
    let mut children = vec![Vec::new(); m];
    for &(p, c) in arcs {
        indeg[c] += 1;
        children[p].push(c);
    }
    let mut queue: Vec<usize> = (0..m).filter(|&r| indeg[r] == 0).collect();
    let mut visited = 0;
    while let Some(r) = queue.pop() {
        visited += 1;
        for &c in &children[r] {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                queue.push(c);
            }
        }
    }
    if visited == m {
        return None;
    }
    let mut partial: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(p, c) in arcs {
        if reaches(&partial, c, p) {
            return Some((p, c));
        }
        partial[p].push(c);
    }
    None
}

/// True when `to` is reachable from `from` along `children` edges.
pub(crate) fn reaches(children: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = vec![false; children.len()];
    let mut stack = vec![from];
    while let Some(r) = stack.pop() {
        if r == to {
            return true;
        }
        if !core::mem::replace(&mut seen[r], true) {
            stack.extend(children[r].iter().copied());
        }
    }
    false
}

/// A total assignment of one bit per customer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution {
    bits: Vec<bool>,
}

impl Solution {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The all-zero assignment over `n` customers.
    pub fn empty(n: usize) -> Self {
        Self { bits: vec![false; n] }
    }

    /// Panics if an index is `>= n`.
    pub fn from_selected(n: usize, selected: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = vec![false; n];
        for i in selected {
            bits[i] = true;
        }
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, customer: usize) -> bool {
        self.bits[customer]
    }

    pub fn set(&mut self, customer: usize, bit: bool) {
        self.bits[customer] = bit;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    /// Ordered-pair form `{(i, b)}`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.bits.iter().copied().enumerate()
    }

    /// Number of customers whose bits differ, i.e. `n - |X ∩ Y|` on
    /// ordered-pair forms.
    pub fn hamming_distance(&self, other: &Solution) -> Result<usize, ModelError> {
        if self.len() != other.len() {
            return Err(ModelError::SizeMismatch { left: self.len(), right: other.len() });
        }
        Ok(self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count())
    }
}

/// Exact rational in `[0, 1]`, kept in lowest terms. Used for budget cost
/// ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self, ModelError> {
        if den == 0 || num > den {
            return Err(ModelError::RatioOutOfRange { num, den });
        }
        let (mut a, mut b) = (num, den);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Ok(Self { num: num / a, den: den / a })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `round_half_up(self * value)` without going through floating point.
    pub fn scale_round_half_up(self, value: u64) -> u64 {
        let prod = self.num as u128 * value as u128;
        ((2 * prod + self.den as u128) / (2 * self.den as u128)) as u64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

/// Parses decimal notation (`0.7`, `1`, `.25`) or `a/b`.
impl FromStr for Ratio {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num = a.trim().parse().map_err(|_| ModelError::MalformedRatio)?;
            let den = b.trim().parse().map_err(|_| ModelError::MalformedRatio)?;
            return Ratio::new(num, den);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty()
            || !int.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
            || frac.len() > 18
        {
            return Err(ModelError::MalformedRatio);
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| ModelError::MalformedRatio)? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| ModelError::MalformedRatio)? };
        let num = int.checked_mul(den).and_then(|v| v.checked_add(frac)).ok_or(ModelError::MalformedRatio)?;
        Ratio::new(num, den)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Print as a terminating decimal when the denominator allows it.
        let mut den = self.den;
        let (mut twos, mut fives) = (0u32, 0u32);
        while den.is_multiple_of(2) {
            den /= 2;
            twos += 1;
        }
        while den.is_multiple_of(5) {
            den /= 5;
            fives += 1;
        }
        if den != 1 {
            return write!(f, "{}/{}", self.num, self.den);
        }
        let digits = twos.max(fives);
        let scale = 10u128.pow(digits);
        let scaled = self.num as u128 * scale / self.den as u128;
        if digits == 0 {
            write!(f, "{}", scaled)
        } else {
            let int = scaled / scale;
            let frac = scaled % scale;
            write!(f, "{}.{:0width$}", int, frac, width = digits as usize)
        }
    }
}

/// Development budget bound `B`; feasible means `cost <= bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub bound: u64,
    pub ratio: Option<Ratio>,
}

impl Budget {
    pub fn new(bound: u64) -> Self {
        Self { bound, ratio: None }
    }
}

/// Incrementally maintained selection: per-requirement demand counts give
/// O(|closure|) add/remove and O(1) cost reads.
#[derive(Debug, Clone)]
pub struct Selection<'a> {
    instance: &'a Instance,
    bits: Vec<bool>,
    demand: Vec<u32>,
    cost: u64,
    profit: u64,
    count: usize,
}

impl<'a> Selection<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        Self {
            instance,
            bits: vec![false; instance.num_customers()],
            demand: vec![0; instance.num_requirements()],
            cost: 0,
            profit: 0,
            count: 0,
        }
    }

    pub fn from_solution(instance: &'a Instance, solution: &Solution) -> Self {
        let mut sel = Self::new(instance);
        for i in solution.selected() {
            sel.add(i);
        }
        sel
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn is_selected(&self, customer: usize) -> bool {
        self.bits[customer]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }

    pub fn profit(&self) -> u64 {
        self.profit
    }

    pub fn num_selected(&self) -> usize {
        self.count
    }

    /// The `k`-th selected customer in index order.
    pub fn nth_selected(&self, k: usize) -> Option<usize> {
        self.bits.iter().enumerate().filter(|(_, &b)| b).nth(k).map(|(i, _)| i)
    }

    /// Cost after selecting `customer`, without mutating.
    pub fn cost_if_added(&self, customer: usize) -> u64 {
        if self.bits[customer] {
            return self.cost;
        }
        let extra: u64 = self
            .instance
            .closure_unchecked(customer)
            .iter()
            .filter(|&&r| self.demand[r] == 0)
            .map(|&r| self.instance.costs[r])
            .sum();
        self.cost + extra
    }

    /// Cost after deselecting `customer`, without mutating.
    pub fn cost_if_removed(&self, customer: usize) -> u64 {
        if !self.bits[customer] {
            return self.cost;
        }
        let freed: u64 = self
            .instance
            .closure_unchecked(customer)
            .iter()
            .filter(|&&r| self.demand[r] == 1)
            .map(|&r| self.instance.costs[r])
            .sum();
        self.cost - freed
    }

    pub fn add(&mut self, customer: usize) {
        if core::mem::replace(&mut self.bits[customer], true) {
            return;
        }
        for &r in self.instance.closure_unchecked(customer) {
            if self.demand[r] == 0 {
                self.cost += self.instance.costs[r];
            }
            self.demand[r] += 1;
        }
        self.profit += self.instance.customers[customer].profit;
        self.count += 1;
    }

    pub fn remove(&mut self, customer: usize) {
        if !core::mem::replace(&mut self.bits[customer], false) {
            return;
        }
        for &r in self.instance.closure_unchecked(customer) {
            self.demand[r] -= 1;
            if self.demand[r] == 0 {
                self.cost -= self.instance.costs[r];
            }
        }
        self.profit -= self.instance.customers[customer].profit;
        self.count -= 1;
    }

    pub fn flip(&mut self, customer: usize) {
        if self.bits[customer] {
            self.remove(customer)
        } else {
            self.add(customer)
        }
    }

    pub fn to_solution(&self) -> Solution {
        Solution::new(self.bits.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::comm3;
    use proptest::prelude::*;

    fn set(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    #[test]
    fn comm3_transitive_parents() {
        let inst = comm3();
        assert_eq!(inst.transitive_parents(&set(&[2, 3])).unwrap(), set(&[0]));
        assert_eq!(inst.transitive_parents(&set(&[6, 7])).unwrap(), set(&[1, 5]));
        assert!(inst.transitive_parents(&BTreeSet::new()).unwrap().is_empty());
        assert!(inst.transitive_parents(&set(&[8])).is_err());
    }

    #[test]
    fn transitive_parents_keeps_members_that_are_parents() {
        // r1 -> r4 -> r5: asking for {r4, r5} reports r4 since it reaches r5.
        let inst = comm3();
        assert_eq!(inst.transitive_parents(&set(&[3, 4])).unwrap(), set(&[0, 1, 3, 5, 6, 7]));
    }

    #[test]
    fn comm3_closures() {
        let inst = comm3();
        assert_eq!(inst.closure(0).unwrap(), &[0, 2, 3]);
        assert_eq!(inst.closure(1).unwrap(), &[0, 1, 3, 4, 5, 6, 7]);
        assert_eq!(inst.closure(2).unwrap(), &[1, 5, 6, 7]);
        assert!(inst.closure(3).is_err());
    }

    #[test]
    fn closure_without_arcs_is_request_set() {
        let inst = Instance::new(vec![1, 2, 3], [], vec![Customer::new(5, [2, 0])]).unwrap();
        assert_eq!(inst.closure(0).unwrap(), &[0, 2]);
    }

    #[test]
    fn comm3_cost_profit_feasibility() {
        let inst = comm3();
        let b = Budget::new(36);
        let x1 = Solution::new(vec![true, false, false]);
        let x2 = Solution::new(vec![false, true, true]);
        let x3 = Solution::new(vec![true, true, false]);
        assert_eq!((inst.solution_profit(&x1), inst.solution_cost(&x1)), (30, 26));
        assert_eq!((inst.solution_profit(&x2), inst.solution_cost(&x2)), (45, 35));
        assert_eq!(inst.solution_cost(&x3), 51);
        assert!(inst.is_feasible(&x2, b));
        assert!(!inst.is_feasible(&x3, b));
        assert!(inst.is_feasible(&Solution::empty(3), Budget::new(0)));
        assert_eq!(x1.hamming_distance(&x2).unwrap(), 3);
        assert_eq!(x1.hamming_distance(&x1).unwrap(), 0);
        assert!(x1.hamming_distance(&Solution::empty(4)).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            Instance::new(vec![1, 1], [(0, 1), (1, 0)], vec![]),
            Err(ModelError::Cycle { .. })
        ));
        assert!(matches!(
            Instance::new(vec![1], [(0, 1)], vec![]),
            Err(ModelError::InvalidRequirement { index: 1, .. })
        ));
        assert!(matches!(
            Instance::new(vec![1], [], vec![Customer::new(0, [0])]),
            Err(ModelError::ZeroProfit { index: 0 })
        ));
        assert!(matches!(Instance::new(vec![1], [(0, 0)], vec![]), Err(ModelError::Cycle { .. })));
    }

    #[test]
    fn degenerate_instances() {
        let inst = Instance::new(vec![], [], vec![]).unwrap();
        assert_eq!(inst.solution_cost(&Solution::empty(0)), 0);
        let inst = Instance::new(vec![3], [], vec![Customer::new(4, [])]).unwrap();
        assert_eq!(inst.solution_cost(&Solution::new(vec![true])), 0);
        assert_eq!(inst.solution_profit(&Solution::new(vec![true])), 4);
    }

    #[test]
    fn ratio_parse_and_round() {
        let r: Ratio = "0.7".parse().unwrap();
        assert_eq!(r.scale_round_half_up(51), 36);
        assert_eq!("0.5".parse::<Ratio>().unwrap().scale_round_half_up(3), 2);
        assert_eq!("1".parse::<Ratio>().unwrap().scale_round_half_up(51), 51);
        assert_eq!(".25".parse::<Ratio>().unwrap(), Ratio::new(1, 4).unwrap());
        assert!("1.5".parse::<Ratio>().is_err());
        assert!("x".parse::<Ratio>().is_err());
        assert!(".".parse::<Ratio>().is_err());
        assert_eq!(alloc::format!("{}", Ratio::new(7, 10).unwrap()), "0.7");
        assert_eq!(alloc::format!("{}", Ratio::new(1, 3).unwrap()), "1/3");
    }

    fn small_instance() -> impl Strategy<Value = Instance> {
        (1usize..10, 0usize..8).prop_flat_map(|(m, n)| {
            (
                proptest::collection::vec(0u64..10, m),
                proptest::collection::vec((0..m, 0..m), 0..2 * m),
                proptest::collection::vec((1u64..20, proptest::collection::vec(0..m, 0..4)), n),
            )
                .prop_map(|(costs, arcs, custs)| {
                    // orient arcs low -> high to stay acyclic
                    let arcs = arcs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b)));
                    let custs = custs.into_iter().map(|(w, r)| Customer::new(w, r)).collect();
                    Instance::new(costs, arcs, custs).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn closure_is_idempotent(inst in small_instance()) {
            for i in 0..inst.num_customers() {
                let cl: BTreeSet<usize> = inst.closure(i).unwrap().iter().copied().collect();
                let again: BTreeSet<usize> = cl.union(&inst.transitive_parents(&cl).unwrap()).copied().collect();
                prop_assert_eq!(&cl, &again);
                for r in &inst.customers()[i].requested {
                    prop_assert!(cl.contains(r));
                }
            }
        }

        #[test]
        fn cost_subadditive_and_monotone(inst in small_instance(), a in any::<u8>(), b in any::<u8>()) {
            let n = inst.num_customers();
            let sa = Solution::from_selected(n, (0..n).filter(|i| a >> i & 1 == 1));
            let sb = Solution::from_selected(n, (0..n).filter(|i| b >> i & 1 == 1));
            let su = Solution::from_selected(n, sa.selected().chain(sb.selected()));
            let (ca, cb, cu) = (inst.solution_cost(&sa), inst.solution_cost(&sb), inst.solution_cost(&su));
            prop_assert!(cu <= ca + cb);
            prop_assert!(cu >= ca && cu >= cb);
            prop_assert!(inst.solution_profit(&su) >= inst.solution_profit(&sa));
        }

        #[test]
        fn selection_matches_batch_scoring(inst in small_instance(), flips in proptest::collection::vec(0usize..8, 0..20)) {
            let n = inst.num_customers();
            prop_assume!(n > 0);
            let mut sel = Selection::new(&inst);
            for f in flips {
                let i = f % n;
                let predicted = if sel.is_selected(i) { sel.cost_if_removed(i) } else { sel.cost_if_added(i) };
                sel.flip(i);
                prop_assert_eq!(sel.cost(), predicted);
                let sol = sel.to_solution();
                prop_assert_eq!(sel.cost(), inst.solution_cost(&sol));
                prop_assert_eq!(sel.profit(), inst.solution_profit(&sol));
            }
        }

        #[test]
        fn hamming_is_a_metric(a in proptest::collection::vec(any::<bool>(), 6),
                               b in proptest::collection::vec(any::<bool>(), 6),
                               c in proptest::collection::vec(any::<bool>(), 6)) {
            let (a, b, c) = (Solution::new(a), Solution::new(b), Solution::new(c));
            let d = |x: &Solution, y: &Solution| x.hamming_distance(y).unwrap();
            prop_assert_eq!(d(&a, &b), d(&b, &a));
            prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
            prop_assert_eq!(d(&a, &b) == 0, a == b);
        }
    }
}
