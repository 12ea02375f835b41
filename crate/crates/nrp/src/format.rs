//! Line-oriented instance text format.
//!
//! ```text
//! nrp-instance 1
//! requirements <m>
//! <id> <cost>                      # m lines, ids 1..m in order
//! dependencies <e>
//! <parent-id> <child-id>           # e lines, child depends on parent
//! customers <n>
//! <id> <profit> <k> <req-id × k>   # n lines, ids 1..n in order
//! budget <B>                       # optional
//! ```
//!
//! Lines whose first non-blank character is `#` are comments; blank lines
//! are skipped. Ids in the file are 1-based. [`write_instance`] emits the
//! canonical form: no comments, arcs sorted, request lists sorted.

use std::fmt::Write as _;

use nrp_core::{Customer, Instance, ModelError, PartialAssignment};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown header {found:?}, expected {expected:?}")]
    UnknownHeader { line: usize, found: String, expected: &'static str },
    #[error("line {line}: duplicate {what} {id}")]
    DuplicateId { line: usize, what: &'static str, id: u64 },
    #[error("line {line}: {what} {id} out of range 1..={max}")]
    OutOfRange { line: usize, what: &'static str, id: u64, max: usize },
    #[error("line {line}: dependency {parent} -> {child} creates a cycle")]
    Cycle { line: usize, parent: u64, child: u64 },
    #[error("line {line}: customer {id} must have a positive profit")]
    ZeroProfit { line: usize, id: u64 },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEof { expected: &'static str },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A parsed instance file with its optional budget line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub budget: Option<u64>,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((i + 1, t.split_whitespace().collect()));
        }
        None
    }

    fn expect(&mut self, expected: &'static str) -> Result<(usize, Vec<&'a str>), FormatError> {
        self.next().ok_or(FormatError::UnexpectedEof { expected })
    }

    /// `<keyword> <count>`
    fn header(&mut self, keyword: &'static str) -> Result<(usize, usize), FormatError> {
        let (line, toks) = self.expect(keyword)?;
        if toks[0] != keyword {
            return Err(FormatError::UnknownHeader { line, found: toks[0].to_string(), expected: keyword });
        }
        if toks.len() != 2 {
            return Err(syntax(line, format!("expected `{keyword} <count>`")));
        }
        Ok((line, num(line, toks[1])? as usize))
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn num(line: usize, tok: &str) -> Result<u64, FormatError> {
    tok.parse().map_err(|_| syntax(line, format!("expected a non-negative integer, found {tok:?}")))
}

/// Checks a 1-based id against its expected position.
fn ordered_id(line: usize, what: &'static str, id: u64, expected: usize) -> Result<(), FormatError> {
    if id == expected as u64 {
        Ok(())
    } else if id >= 1 && id < expected as u64 {
        Err(FormatError::DuplicateId { line, what, id })
    } else {
        Err(syntax(line, format!("expected {what} id {expected}, found {id}")))
    }
}

fn reference(line: usize, what: &'static str, id: u64, max: usize) -> Result<usize, FormatError> {
    if id == 0 || id > max as u64 {
        return Err(FormatError::OutOfRange { line, what, id, max });
    }
    Ok(id as usize - 1)
}

pub fn read_instance(text: &str) -> Result<InstanceFile, FormatError> {
    let mut lines = Lines { inner: text.lines().enumerate() };

    let (line, toks) = lines.expect("nrp-instance 1")?;
    if toks != ["nrp-instance", "1"] {
        return Err(FormatError::UnknownHeader { line, found: toks.join(" "), expected: "nrp-instance 1" });
    }

    let (_, m) = lines.header("requirements")?;
    let mut costs = Vec::with_capacity(m);
    for k in 1..=m {
        let (line, toks) = lines.expect("requirement line")?;
        if toks.len() != 2 {
            return Err(syntax(line, "expected `<id> <cost>`"));
        }
        ordered_id(line, "requirement", num(line, toks[0])?, k)?;
        costs.push(num(line, toks[1])?);
    }

    let (_, e) = lines.header("dependencies")?;
    let mut arcs = Vec::with_capacity(e);
    let mut arc_lines = Vec::with_capacity(e);
    let mut seen = std::collections::HashSet::new();
    for _ in 0..e {
        let (line, toks) = lines.expect("dependency line")?;
        if toks.len() != 2 {
            return Err(syntax(line, "expected `<parent-id> <child-id>`"));
        }
        let p = reference(line, "requirement", num(line, toks[0])?, m)?;
        let c = reference(line, "requirement", num(line, toks[1])?, m)?;
        if !seen.insert((p, c)) {
            return Err(syntax(line, format!("duplicate dependency {} -> {}", p + 1, c + 1)));
        }
        arcs.push((p, c));
        arc_lines.push(line);
    }

    let (_, n) = lines.header("customers")?;
    let mut customers = Vec::with_capacity(n);
    for k in 1..=n {
        let (line, toks) = lines.expect("customer line")?;
        if toks.len() < 3 {
            return Err(syntax(line, "expected `<id> <profit> <k> <req-id>...`"));
        }
        let id = num(line, toks[0])?;
        ordered_id(line, "customer", id, k)?;
        let profit = num(line, toks[1])?;
        if profit == 0 {
            return Err(FormatError::ZeroProfit { line, id });
        }
        let count = num(line, toks[2])? as usize;
        if toks.len() != 3 + count {
            return Err(syntax(line, format!("customer {id} declares {count} requests but lists {}", toks.len() - 3)));
        }
        let mut requested = Vec::with_capacity(count);
        for tok in &toks[3..] {
            let r = reference(line, "requirement", num(line, tok)?, m)?;
            if requested.contains(&r) {
                return Err(FormatError::DuplicateId { line, what: "requested requirement", id: r as u64 + 1 });
            }
            requested.push(r);
        }
        customers.push(Customer::new(profit, requested));
    }

    let budget = match lines.next() {
        None => None,
        Some((line, toks)) => {
            if toks[0] != "budget" {
                return Err(FormatError::UnknownHeader { line, found: toks[0].to_string(), expected: "budget" });
            }
            if toks.len() != 2 {
                return Err(syntax(line, "expected `budget <B>`"));
            }
            Some(num(line, toks[1])?)
        }
    };
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "trailing content after the last section"));
    }

    match Instance::new(costs, arcs.iter().copied(), customers) {
        Ok(instance) => Ok(InstanceFile { instance, budget }),
        Err(ModelError::Cycle { .. }) => Err(locate_cycle(m, &arcs, &arc_lines)),
        Err(e) => Err(e.into()),
    }
}

/// Re-inserts arcs in file order and reports the first that closes a cycle.
fn locate_cycle(m: usize, arcs: &[(usize, usize)], lines: &[usize]) -> FormatError {
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (&(p, c), &line) in arcs.iter().zip(lines) {
        let mut seen = vec![false; m];
        let mut stack = vec![c];
        while let Some(r) = stack.pop() {
            if r == p {
                return FormatError::Cycle { line, parent: p as u64 + 1, child: c as u64 + 1 };
            }
            if !std::mem::replace(&mut seen[r], true) {
                stack.extend(&children[r]);
            }
        }
        children[p].push(c);
    }
    unreachable!("instance construction reported a cycle")
}

/// Canonical text for `instance`, with an optional budget line.
pub fn write_instance(instance: &Instance, budget: Option<u64>) -> String {
    let mut out = String::new();
    writeln!(out, "nrp-instance 1").unwrap();
    writeln!(out, "requirements {}", instance.num_requirements()).unwrap();
    for (r, c) in instance.costs().iter().enumerate() {
        writeln!(out, "{} {}", r + 1, c).unwrap();
    }
    writeln!(out, "dependencies {}", instance.arcs().len()).unwrap();
    for &(p, c) in instance.arcs() {
        writeln!(out, "{} {}", p + 1, c + 1).unwrap();
    }
    writeln!(out, "customers {}", instance.num_customers()).unwrap();
    for (i, cust) in instance.customers().iter().enumerate() {
        write!(out, "{} {} {}", i + 1, cust.profit, cust.requested.len()).unwrap();
        for r in &cust.requested {
            write!(out, " {}", r + 1).unwrap();
        }
        out.push('\n');
    }
    if let Some(b) = budget {
        writeln!(out, "budget {b}").unwrap();
    }
    out
}

/// `fix <customer-id> <bit>` lines, one per pair, 1-based ids.
pub fn write_assignment(assignment: &PartialAssignment) -> String {
    assignment.iter().map(|(i, b)| format!("fix {} {}\n", i + 1, b as u8)).collect()
}

pub fn read_assignment(text: &str) -> Result<PartialAssignment, FormatError> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let mut out = PartialAssignment::new();
    while let Some((line, toks)) = lines.next() {
        if toks.len() != 3 || toks[0] != "fix" {
            return Err(syntax(line, "expected `fix <customer-id> <bit>`"));
        }
        let id = num(line, toks[1])?;
        if id == 0 {
            return Err(syntax(line, "customer ids start at 1"));
        }
        let bit = match toks[2] {
            "0" => false,
            "1" => true,
            other => return Err(syntax(line, format!("bit must be 0 or 1, found {other:?}"))),
        };
        out.insert(id as usize - 1, bit)
            .map_err(|_| FormatError::DuplicateId { line, what: "customer", id })?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nrp_core::fixtures::comm3;

    pub(crate) const COMM3: &str = include_str!("../data/comm3.nrp");

    #[test]
    fn comm3_file_parses_to_fixture() {
        let f = read_instance(COMM3).unwrap();
        assert_eq!(f.instance, comm3());
        assert_eq!(f.budget, Some(36));
    }

    #[test]
    fn canonical_round_trip() {
        let text = write_instance(&comm3(), Some(36));
        assert_eq!(write_instance(&read_instance(&text).unwrap().instance, Some(36)), text);
        let text = write_instance(&comm3(), None);
        assert_eq!(read_instance(&text).unwrap().budget, None);
    }

    fn err(text: &str) -> FormatError {
        read_instance(text).unwrap_err()
    }

    #[test]
    fn cycle_names_the_closing_line() {
        let text = "nrp-instance 1\nrequirements 3\n1 1\n2 1\n3 1\ndependencies 3\n1 2\n2 3\n3 1\ncustomers 0\n";
        assert_eq!(err(text), FormatError::Cycle { line: 9, parent: 3, child: 1 });
        let self_loop = "nrp-instance 1\nrequirements 1\n1 1\ndependencies 1\n1 1\ncustomers 0\n";
        assert_eq!(err(self_loop), FormatError::Cycle { line: 5, parent: 1, child: 1 });
    }

    #[test]
    fn strict_diagnostics() {
        assert!(matches!(err("nrp-instance 2\n"), FormatError::UnknownHeader { line: 1, .. }));
        assert!(matches!(
            err("nrp-instance 1\nreqs 1\n"),
            FormatError::UnknownHeader { line: 2, expected: "requirements", .. }
        ));
        assert_eq!(
            err("nrp-instance 1\nrequirements 2\n1 1\n1 1\n"),
            FormatError::DuplicateId { line: 4, what: "requirement", id: 1 }
        );
        assert!(matches!(err("nrp-instance 1\nrequirements 2\n1 1\n3 1\n"), FormatError::Syntax { line: 4, .. }));
        assert_eq!(
            err("nrp-instance 1\nrequirements 1\n1 1\ndependencies 1\n1 2\n"),
            FormatError::OutOfRange { line: 5, what: "requirement", id: 2, max: 1 }
        );
        assert_eq!(
            err("nrp-instance 1\nrequirements 1\n1 1\ndependencies 0\ncustomers 1\n1 0 0\n"),
            FormatError::ZeroProfit { line: 6, id: 1 }
        );
        assert!(matches!(
            err("nrp-instance 1\nrequirements 1\n1 1\ndependencies 0\ncustomers 1\n1 3 2 1\n"),
            FormatError::Syntax { line: 6, .. }
        ));
        assert!(matches!(
            err("nrp-instance 1\nrequirements 1\n1 1\ndependencies 0\ncustomers 1\n1 3 2 1 1\n"),
            FormatError::DuplicateId { line: 6, .. }
        ));
        assert!(matches!(
            err("nrp-instance 1\nrequirements 1\n1 1\ndependencies 0\ncustomers 0\nbudget 3\nbudget 4\n"),
            FormatError::Syntax { line: 7, .. }
        ));
        assert!(matches!(
            err("nrp-instance 1\nrequirements 1\n1 1\ndependencies 0\ncustomers 0\nbonus 3\n"),
            FormatError::UnknownHeader { line: 6, .. }
        ));
        assert!(matches!(err("nrp-instance 1\nrequirements 2\n1 1\n"), FormatError::UnexpectedEof { .. }));
        assert!(matches!(err("nrp-instance 1\nrequirements x\n"), FormatError::Syntax { line: 2, .. }));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# header\nnrp-instance 1\n\nrequirements 1\n  # cost list\n1 4\ndependencies 0\ncustomers 1\n1 2 1 1\n";
        let f = read_instance(text).unwrap();
        assert_eq!(f.instance.costs(), &[4]);
    }

    #[test]
    fn assignment_lines() {
        let pa = PartialAssignment::from_pairs([(0, false), (1, true), (2, true)]).unwrap();
        let text = write_assignment(&pa);
        assert_eq!(text, "fix 1 0\nfix 2 1\nfix 3 1\n");
        assert_eq!(read_assignment(&text).unwrap(), pa);
        assert!(read_assignment("fix 1 1\nfix 1 0\n").is_err());
        assert!(read_assignment("fix 0 1\n").is_err());
        assert!(read_assignment("fix 1 2\n").is_err());
    }
}
