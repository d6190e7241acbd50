//! Published reference values, used as test fixtures only.
//!
//! This module ships the previously published values of the mod-p Buchstaber
//! invariant as a fixed data set so that the test suite and the `verify`
//! runner can compare independently computed results against them.  Nothing
//! in this crate ever *answers* a query from these tables: every invariant
//! value returned by [`crate::invariants`] is derived from closed forms,
//! constructions, or search.  The registry exists purely as an oracle for
//! acceptance checks and as an annotation source (marking table cells that
//! go beyond the published data).
//!
//! Provenance is encoded structurally: everything reachable through the
//! `published_*` functions was printed as an exact value in the reference
//! tables, while [`asserted_universal_upper_bounds`] holds claims that were
//! stated without a complete supporting argument and that this crate records
//! but does not treat as verified.

use std::collections::BTreeMap;

/// A published exact value `s_p(Δ^m_(k)) = value` for a skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkeletonReference {
    pub m: u32,
    pub k: u32,
    pub p: u32,
    pub value: u32,
}

/// A published exact value `s_q(X(F_p^n)) = value` for a universal complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniversalReference {
    /// Field order of the source universal complex `X(F_p^n)`.
    pub p: u32,
    /// Dimension parameter of the source universal complex.
    pub n: u32,
    /// Modulus of the invariant, i.e. the target family `X(F_q^r)`.
    pub q: u32,
    pub value: u32,
}

/// A published upper-bound claim `s_q(X(F_p^n)) ≤ bound` that was asserted
/// without a complete supporting argument.  Recorded verbatim; never used as
/// an oracle and not marked as verified by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniversalBoundClaim {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    pub upper_bound: u32,
}

/// The mod-3 skeleton table: every filled cell `(m, k) ↦ s_3(Δ^m_(k))` of the
/// published triangular table for `2 ≤ m ≤ 10`.  The `m = 10` row was
/// published only partially (columns `k = 2..=7` were left blank); the blank
/// cells are simply absent here.
const MOD3_SKELETON: &[(u32, u32, u32)] = &[
    // m = 2
    (2, 0, 2),
    (2, 1, 1),
    (2, 2, 0),
    // m = 3
    (3, 0, 3),
    (3, 1, 2),
    (3, 2, 1),
    (3, 3, 0),
    // m = 4
    (4, 0, 4),
    (4, 1, 2),
    (4, 2, 1),
    (4, 3, 1),
    (4, 4, 0),
    // m = 5
    (5, 0, 5),
    (5, 1, 3),
    (5, 2, 2),
    (5, 3, 1),
    (5, 4, 1),
    (5, 5, 0),
    // m = 6
    (6, 0, 6),
    (6, 1, 4),
    (6, 2, 3),
    (6, 3, 2),
    (6, 4, 1),
    (6, 5, 1),
    (6, 6, 0),
    // m = 7
    (7, 0, 7),
    (7, 1, 5),
    (7, 2, 4),
    (7, 3, 3),
    (7, 4, 2),
    (7, 5, 1),
    (7, 6, 1),
    (7, 7, 0),
    // m = 8
    (8, 0, 8),
    (8, 1, 6),
    (8, 2, 5),
    (8, 3, 4),
    (8, 4, 3),
    (8, 5, 1),
    (8, 6, 1),
    (8, 7, 1),
    (8, 8, 0),
    // m = 9
    (9, 0, 9),
    (9, 1, 7),
    (9, 2, 6),
    (9, 3, 5),
    (9, 4, 4),
    (9, 5, 2),
    (9, 6, 1),
    (9, 7, 1),
    (9, 8, 1),
    (9, 9, 0),
    // m = 10 (partial row as published)
    (10, 0, 10),
    (10, 1, 8),
    (10, 8, 1),
    (10, 9, 1),
    (10, 10, 0),
];

/// Primes covered by the comparative skeleton table, in column order.
pub const MOD_P_PRIMES: [u32; 4] = [2, 3, 5, 7];

/// The comparative skeleton table: for each `(m, k)` with `2 ≤ m ≤ 9` and
/// `1 ≤ k ≤ m`, the published values of `s_p(Δ^m_(k))` for
/// `p = 2, 3, 5, 7` in that order.  `None` marks a cell the publication left
/// blank.  The `k = m` column (the full simplex, invariant 0) was printed
/// once per row and applies to every prime.
///
/// Values are transcribed verbatim, including two cells that the wider test
/// suite flags as inconsistent with independently computed values:
/// `(m, k, p) = (6, 1, 5)` (printed 5; seven vertices admit at most six
/// pairwise independent scalar classes in a 2-dimensional target, forcing 4)
/// and `(6, 2, 5)` (printed 4; a 7-point planar arc over F_5 cannot exist,
/// forcing 3).
const MOD_P_SKELETON: &[(u32, u32, [Option<u32>; 4])] = &[
    // m = 2
    (2, 1, [Some(1), Some(1), Some(1), Some(1)]),
    (2, 2, [Some(0), Some(0), Some(0), Some(0)]),
    // m = 3
    (3, 1, [Some(1), Some(2), Some(2), Some(2)]),
    (3, 2, [Some(1), Some(1), Some(1), Some(1)]),
    (3, 3, [Some(0), Some(0), Some(0), Some(0)]),
    // m = 4
    (4, 1, [Some(2), Some(2), Some(3), Some(3)]),
    (4, 2, [Some(1), Some(1), Some(2), Some(2)]),
    (4, 3, [Some(1), Some(1), Some(1), Some(1)]),
    (4, 4, [Some(0), Some(0), Some(0), Some(0)]),
    // m = 5
    (5, 1, [Some(3), Some(3), Some(4), Some(4)]),
    (5, 2, [Some(2), Some(2), Some(3), Some(3)]),
    (5, 3, [Some(1), Some(1), Some(2), Some(2)]),
    (5, 4, [Some(1), Some(1), Some(1), Some(1)]),
    (5, 5, [Some(0), Some(0), Some(0), Some(0)]),
    // m = 6
    (6, 1, [Some(4), Some(4), Some(5), Some(5)]),
    (6, 2, [Some(3), Some(3), Some(4), Some(4)]),
    (6, 3, [Some(1), Some(2), Some(2), Some(3)]),
    (6, 4, [Some(1), Some(1), Some(1), Some(2)]),
    (6, 5, [Some(1), Some(1), Some(1), Some(1)]),
    (6, 6, [Some(0), Some(0), Some(0), Some(0)]),
    // m = 7
    (7, 1, [Some(4), Some(5), Some(5), Some(6)]),
    (7, 2, [Some(4), Some(4), Some(4), Some(5)]),
    (7, 3, [Some(2), Some(3), Some(3), Some(4)]),
    (7, 4, [Some(1), Some(2), Some(2), Some(3)]),
    (7, 5, [Some(1), Some(1), Some(1), Some(2)]),
    (7, 6, [Some(1), Some(1), Some(1), Some(1)]),
    (7, 7, [Some(0), Some(0), Some(0), Some(0)]),
    // m = 8
    (8, 1, [Some(5), Some(6), Some(6), Some(6)]),
    (8, 2, [Some(4), Some(5), Some(5), None]),
    (8, 3, [Some(2), Some(4), Some(4), None]),
    (8, 4, [Some(2), Some(3), Some(3), None]),
    (8, 5, [Some(1), Some(1), Some(2), None]),
    (8, 6, [Some(1), Some(1), Some(1), Some(1)]),
    (8, 7, [Some(1), Some(1), Some(1), Some(1)]),
    (8, 8, [Some(0), Some(0), Some(0), Some(0)]),
    // m = 9
    (9, 1, [Some(6), Some(7), Some(7), Some(7)]),
    (9, 2, [Some(5), Some(6), None, None]),
    (9, 3, [Some(3), Some(5), None, None]),
    (9, 4, [Some(2), Some(4), None, None]),
    (9, 5, [Some(1), Some(2), None, None]),
    (9, 6, [Some(1), Some(1), None, None]),
    (9, 7, [Some(1), Some(1), Some(1), Some(1)]),
    (9, 8, [Some(1), Some(1), Some(1), Some(1)]),
    (9, 9, [Some(0), Some(0), Some(0), Some(0)]),
];

/// Published exact values for universal complexes, `(p, n, q, value)` read as
/// `s_q(X(F_p^n)) = value`.  The first five are the own-field family
/// `s_p(X(F_p^n)) = p^n − 1 − n`.
const UNIVERSAL: &[(u32, u32, u32, u32)] = &[
    (2, 2, 2, 1),
    (2, 3, 2, 4),
    (2, 4, 2, 11),
    (3, 2, 3, 6),
    (3, 3, 3, 23),
    (2, 4, 3, 10),
    (2, 4, 5, 11),
    (2, 4, 7, 11),
    (3, 3, 2, 21),
];

/// Every published mod-3 skeleton value, row-major.
pub fn published_mod3_skeleton_values() -> Vec<SkeletonReference> {
    MOD3_SKELETON
        .iter()
        .map(|&(m, k, value)| SkeletonReference { m, k, p: 3, value })
        .collect()
}

/// Every published comparative skeleton value (all four primes), row-major.
pub fn published_mod_p_skeleton_values() -> Vec<SkeletonReference> {
    MOD_P_SKELETON
        .iter()
        .flat_map(|&(m, k, cells)| {
            MOD_P_PRIMES
                .iter()
                .zip(cells)
                .filter_map(move |(&p, cell)| {
                    cell.map(|value| SkeletonReference { m, k, p, value })
                })
        })
        .collect()
}

/// Every published universal-complex value.
pub fn published_universal_values() -> Vec<UniversalReference> {
    UNIVERSAL
        .iter()
        .map(|&(p, n, q, value)| UniversalReference { p, n, q, value })
        .collect()
}

/// Published upper-bound claims recorded as asserted, not verified.
pub fn asserted_universal_upper_bounds() -> Vec<UniversalBoundClaim> {
    vec![UniversalBoundClaim {
        p: 3,
        n: 4,
        q: 2,
        upper_bound: 73,
    }]
}

/// Looks up the published value of `s_p(Δ^m_(k))`, if any.
///
/// For `p = 3` the dedicated mod-3 table takes precedence; the comparative
/// table is consulted for the remaining primes (and agrees with the mod-3
/// table on every shared cell, as the unit tests check).
pub fn published_skeleton_value(m: u32, k: u32, p: u32) -> Option<u32> {
    if p == 3 {
        if let Some(&(_, _, value)) = MOD3_SKELETON
            .iter()
            .find(|&&(tm, tk, _)| tm == m && tk == k)
        {
            return Some(value);
        }
    }
    let column = MOD_P_PRIMES.iter().position(|&q| q == p)?;
    MOD_P_SKELETON
        .iter()
        .find(|&&(tm, tk, _)| tm == m && tk == k)
        .and_then(|&(_, _, cells)| cells[column])
}

/// Looks up the published value of `s_q(X(F_p^n))`, if any.
pub fn published_universal_value(p: u32, n: u32, q: u32) -> Option<u32> {
    UNIVERSAL
        .iter()
        .find(|&&(tp, tn, tq, _)| tp == p && tn == n && tq == q)
        .map(|&(_, _, _, value)| value)
}

/// The published skeleton values for one prime as a `(m, k) ↦ value` map,
/// in the shape [`crate::invariants::monotonicity_audit`] consumes.
pub fn published_skeleton_table(p: u32) -> BTreeMap<(u32, u32), u32> {
    let mut table = BTreeMap::new();
    if p == 3 {
        for &(m, k, value) in MOD3_SKELETON {
            table.insert((m, k), value);
        }
    }
    if let Some(column) = MOD_P_PRIMES.iter().position(|&q| q == p) {
        for &(m, k, cells) in MOD_P_SKELETON {
            if let Some(value) = cells[column] {
                table.entry((m, k)).or_insert(value);
            }
        }
    }
    table
}
