//! Cross-checking a table of skeleton invariants against the chained
//! monotonicity inequalities
//!
//! ```text
//! s_p(Δ^{m+1}_{(k+1)}) ≤ s_p(Δ^m_(k)) ≤ s_p(Δ^{m+1}_(k)) ≤ s_p(Δ^m_(k)) + 1
//! ```
//!
//! which follow from skeleton inclusions and vertex extensions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Which of the three chained inequalities failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotonicityRule {
    /// `s_p(Δ^{m+1}_{(k+1)}) ≤ s_p(Δ^m_(k))`.
    DiagonalDescent,
    /// `s_p(Δ^m_(k)) ≤ s_p(Δ^{m+1}_(k))`.
    ColumnNondecreasing,
    /// `s_p(Δ^{m+1}_(k)) ≤ s_p(Δ^m_(k)) + 1`.
    ColumnStepAtMostOne,
}

/// One failed inequality, anchored at the cell `(m, k)` it compares from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityViolation {
    pub rule: MonotonicityRule,
    pub m: u32,
    pub k: u32,
    /// The side required to be smaller (or smaller-by-one).
    pub lhs: u32,
    /// The bound it had to respect.
    pub rhs: u32,
}

impl fmt::Display for MonotonicityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, k) = (self.m, self.k);
        match self.rule {
            MonotonicityRule::DiagonalDescent => write!(
                f,
                "s(m={}, k={}) = {} exceeds s(m={m}, k={k}) = {}",
                m + 1,
                k + 1,
                self.lhs,
                self.rhs
            ),
            MonotonicityRule::ColumnNondecreasing => write!(
                f,
                "s(m={m}, k={k}) = {} exceeds s(m={}, k={k}) = {}",
                self.lhs,
                m + 1,
                self.rhs
            ),
            MonotonicityRule::ColumnStepAtMostOne => write!(
                f,
                "s(m={}, k={k}) = {} exceeds s(m={m}, k={k}) + 1 = {}",
                m + 1,
                self.lhs,
                self.rhs
            ),
        }
    }
}

/// Checks every instance of the three chained inequalities whose cells are
/// both present in `table` (keyed by `(m, k)`, values exact). Returns the
/// violations; an empty list means the table is consistent.
pub fn monotonicity_audit(table: &BTreeMap<(u32, u32), u32>) -> Vec<MonotonicityViolation> {
    let mut violations = Vec::new();
    for (&(m, k), &value) in table {
        if let Some(&diagonal) = table.get(&(m + 1, k + 1)) {
            if diagonal > value {
                violations.push(MonotonicityViolation {
                    rule: MonotonicityRule::DiagonalDescent,
                    m,
                    k,
                    lhs: diagonal,
                    rhs: value,
                });
            }
        }
        if let Some(&extended) = table.get(&(m + 1, k)) {
            if value > extended {
                violations.push(MonotonicityViolation {
                    rule: MonotonicityRule::ColumnNondecreasing,
                    m,
                    k,
                    lhs: value,
                    rhs: extended,
                });
            }
            if extended > value + 1 {
                violations.push(MonotonicityViolation {
                    rule: MonotonicityRule::ColumnStepAtMostOne,
                    m,
                    k,
                    lhs: extended,
                    rhs: value + 1,
                });
            }
        }
    }
    violations
}
