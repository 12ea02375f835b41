//! Small hand-built instances with known answers.

use alloc::vec;
use alloc::vec::Vec;

use crate::model::{Customer, Instance, Solution};

/// Three-customer, eight-requirement communication company example.
///
/// Costs are 6, 10, 16, 4, 1, 7, 6, 1 (total 51) and profits 30, 25, 20.
/// The dependency arcs reproduce the closures {r1,r3,r4},
/// {r1,r2,r4,r5,r6,r7,r8} and {r2,r6,r7,r8}. At budget 36 the unique
/// optimum selects customers 2 and 3 for profit 45.
pub fn comm3() -> Instance {
    let costs = vec![6, 10, 16, 4, 1, 7, 6, 1];
    let arcs = [(1, 3), (1, 4), (4, 5), (7, 5), (8, 5), (6, 7), (2, 6)].map(|(p, c)| (p - 1, c - 1));
    let customers = vec![Customer::new(30, [2, 3]), Customer::new(25, [4, 5]), Customer::new(20, [6, 7])];
    Instance::new(costs, arcs, customers).unwrap()
}

/// Five customers over eight unit-cost requirements, budget 7, shaped so the
/// two-level reduction 5 -> 3 -> 2 customers (8 -> 5 -> 2 priced
/// requirements) is driven by the local optima below.
pub fn multilevel_example() -> Instance {
    let customers = vec![
        Customer::new(10, [6]),
        Customer::new(10, [0, 1, 2]),
        Customer::new(1, [6, 7]),
        Customer::new(1, [7]),
        Customer::new(10, [3, 4, 5]),
    ];
    Instance::new(vec![1; 8], [], customers).unwrap()
}

/// Solution from a bit string such as `"011"`.
pub fn bits(s: &str) -> Solution {
    Solution::new(s.bytes().map(|b| b == b'1').collect())
}

/// First-level local optima; they agree only on customer 2 (in) and 3 (out).
pub fn multilevel_f1() -> Vec<Solution> {
    vec![bits("11000"), bits("01010"), bits("01001")]
}

/// Second-level local optima over the remaining customers (1, 4, 5).
pub fn multilevel_f2() -> Vec<Solution> {
    vec![bits("101"), bits("011"), bits("001")]
}
