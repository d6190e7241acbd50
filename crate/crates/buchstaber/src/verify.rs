//! End-to-end verification of the published reference values.
//!
//! Each criterion re-derives a slice of the published data with this
//! crate's own methods — closed forms, witness constructions, exhaustive
//! search — and compares the outcome against the [`crate::registry`]
//! fixtures.  The registry supplies only the *expected* side of every
//! comparison; no computed value is ever taken from it.
//!
//! The nine criteria can run individually ([`run_criterion`]) or as a
//! batch ([`run_all`]).  Each produces a [`CriterionReport`] whose
//! [`CriterionReport::line`] is the single pass/fail line printed both by
//! the acceptance test suite and by the command-line `verify-paper`
//! front end.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexes::{
    count_minimal_nonsimplices, enumerate_minimal_nonsimplices, ComplexDescriptor,
};
use crate::fplinalg::{FpMatrix, FpVector, Prime};
use crate::invariants::{
    build_f24_to_f35_map, classification_sp1, greedy_skeleton_map, log_dimension,
    monotonicity_audit, solve_sp2_system, sp_skeleton, sp_universal, vandermonde_skeleton_map,
    NonexistenceEvidence, Sp2Certificate,
};
use crate::registry;
use crate::search::{
    apply_scalar_reweighting, canonical_witness, check_nondegenerate, search_nondegenerate_map,
    CheckResult, SearchBudget, SearchOptions, SearchOutcome, VertexMap,
};

/// Number of verification criteria.
pub const CRITERION_COUNT: u32 = 9;

/// Default seed for the randomized portions of the suite.
pub const DEFAULT_SEED: u64 = 7919;

/// Options for a verification run.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Worker threads handed to every search.
    pub workers: usize,
    /// Skip the exhaustive nonexistence searches (criterion 3 and the
    /// cross-field exactness halves of criterion 5), reporting those
    /// criteria as skipped instead of running them.
    pub skip_slow: bool,
    /// Seed for the randomized checks (criteria 4 and 9); equal seeds draw
    /// identical cases.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            workers: 1,
            skip_slow: false,
            seed: DEFAULT_SEED,
        }
    }
}

/// Outcome of one criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CriterionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CriterionStatus::Pass => "PASS",
            CriterionStatus::Fail => "FAIL",
            CriterionStatus::Skipped => "SKIPPED",
        })
    }
}

/// The result of running one criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub status: CriterionStatus,
    /// One-line summary: counts on success, every mismatch on failure.
    pub detail: String,
}

impl CriterionReport {
    /// The canonical one-line rendering.
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {} — {}",
            self.id, self.name, self.status, self.detail
        )
    }
}

/// Runs a single criterion by number (1–9); `None` for other numbers.
pub fn run_criterion(id: u32, options: &VerifyOptions) -> Option<CriterionReport> {
    match id {
        1 => Some(criterion_mod3_table(options)),
        2 => Some(criterion_four_prime_table(options)),
        3 => Some(criterion_nonexistence(options)),
        4 => Some(criterion_constructions(options)),
        5 => Some(criterion_universal(options)),
        6 => Some(criterion_counting(options)),
        7 => Some(criterion_concordance(options)),
        8 => Some(criterion_monotonicity(options)),
        9 => Some(criterion_properties(options)),
        _ => None,
    }
}

/// Runs all criteria in order.
pub fn run_all(options: &VerifyOptions) -> Vec<CriterionReport> {
    (1..=CRITERION_COUNT)
        .map(|id| run_criterion(id, options).expect("criterion ids are exhaustive"))
        .collect()
}

fn prime(p: u32) -> Prime {
    Prime::new(p).expect("verification primes are prime")
}

fn search_options(options: &VerifyOptions) -> SearchOptions {
    SearchOptions {
        budget: SearchBudget::unlimited(),
        workers: options.workers,
        symmetry_reduction: true,
    }
}

fn report(
    id: u32,
    name: &'static str,
    failures: Vec<String>,
    success_detail: String,
) -> CriterionReport {
    if failures.is_empty() {
        CriterionReport {
            id,
            name,
            status: CriterionStatus::Pass,
            detail: success_detail,
        }
    } else {
        CriterionReport {
            id,
            name,
            status: CriterionStatus::Fail,
            detail: join_failures(&failures),
        }
    }
}

fn join_failures(failures: &[String]) -> String {
    const SHOWN: usize = 8;
    if failures.len() <= SHOWN {
        failures.join("; ")
    } else {
        format!(
            "{}; … and {} more",
            failures[..SHOWN].join("; "),
            failures.len() - SHOWN
        )
    }
}

/// Criterion 1: every filled cell of the published mod-3 skeleton table
/// with `m ≤ 9` is reproduced exactly.
fn criterion_mod3_table(_options: &VerifyOptions) -> CriterionReport {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for reference in registry::published_mod3_skeleton_values() {
        if reference.m > 9 {
            continue;
        }
        checked += 1;
        match sp_skeleton(
            reference.m,
            reference.k,
            prime(3),
            SearchBudget::unlimited(),
        ) {
            Ok(result) if result.value.exact() == Some(reference.value) => {}
            Ok(result) => failures.push(format!(
                "s_3(Δ^{}_({})) computed {} ≠ published {}",
                reference.m, reference.k, result.value, reference.value
            )),
            Err(e) => failures.push(format!(
                "s_3(Δ^{}_({})) failed: {e}",
                reference.m, reference.k
            )),
        }
    }
    report(
        1,
        "mod-3 skeleton table, m ≤ 9",
        failures,
        format!("all {checked} published cells reproduced"),
    )
}

/// Criterion 2: every published cell of the four-prime comparison table
/// with `m ≤ 7` is reproduced exactly.
fn criterion_four_prime_table(_options: &VerifyOptions) -> CriterionReport {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for reference in registry::published_mod_p_skeleton_values() {
        if reference.m > 7 {
            continue;
        }
        checked += 1;
        match sp_skeleton(
            reference.m,
            reference.k,
            prime(reference.p),
            SearchBudget::unlimited(),
        ) {
            Ok(result) if result.value.exact() == Some(reference.value) => {}
            Ok(result) => failures.push(format!(
                "s_{}(Δ^{}_({})) computed {} ≠ published {}",
                reference.p, reference.m, reference.k, result.value, reference.value
            )),
            Err(e) => failures.push(format!(
                "s_{}(Δ^{}_({})) failed: {e}",
                reference.p, reference.m, reference.k
            )),
        }
    }
    report(
        2,
        "four-prime skeleton table, m ≤ 7",
        failures,
        format!("all {checked} published cells reproduced"),
    )
}

/// Criterion 3: no nondegenerate map `X(F_2^4) → X(F_3^4)` exists — the
/// symmetry-reduced search exhausts its whole tree.
fn criterion_nonexistence(options: &VerifyOptions) -> CriterionReport {
    const NAME: &str = "nonexistence of X(F_2^4) → X(F_3^4)";
    if options.skip_slow {
        return CriterionReport {
            id: 3,
            name: NAME,
            status: CriterionStatus::Skipped,
            detail: "exhaustive nonexistence search skipped on request".to_owned(),
        };
    }
    let source = ComplexDescriptor::universal(prime(2), 4).expect("X(F_2^4) is valid");
    match search_nondegenerate_map(&source, prime(3), 4, &search_options(options)) {
        Ok(SearchOutcome::ExhaustedNone { stats }) => {
            let mut failures = Vec::new();
            if options.workers == 1 && stats.nodes != 575_076 {
                failures.push(format!(
                    "single-worker node count drifted: {} ≠ 575076 (traversal is documented as deterministic)",
                    stats.nodes
                ));
            }
            report(
                3,
                NAME,
                failures,
                format!(
                    "full reduced tree exhausted: {} nodes in {:.3?}",
                    stats.nodes, stats.elapsed
                ),
            )
        }
        Ok(SearchOutcome::Found { map, .. }) => report(
            3,
            NAME,
            vec![format!(
                "a nondegenerate map was found (images of first vertices: {:?}…), contradicting the published nonexistence",
                map.images().iter().take(2).collect::<Vec<_>>()
            )],
            String::new(),
        ),
        Ok(SearchOutcome::BudgetExceeded { stats }) => report(
            3,
            NAME,
            vec![format!(
                "search gave up after {} nodes despite an unlimited budget",
                stats.nodes
            )],
            String::new(),
        ),
        Err(e) => report(3, NAME, vec![format!("search failed: {e}")], String::new()),
    }
}

/// Criterion 4: the published 0/1 construction on `X(F_2^4)`, every
/// Vandermonde map with `m ≤ p ≤ 7`, and 20 sampled greedy maps are all
/// nondegenerate.
fn criterion_constructions(options: &VerifyOptions) -> CriterionReport {
    let mut failures = Vec::new();

    let f24 = ComplexDescriptor::universal(prime(2), 4).expect("X(F_2^4) is valid");
    match check_nondegenerate(&f24, &build_f24_to_f35_map()) {
        Ok(CheckResult::Nondegenerate) => {}
        Ok(CheckResult::Degenerate { simplex }) => failures.push(format!(
            "the X(F_2^4) → X(F_3^5) construction is degenerate on {simplex:?}"
        )),
        Err(e) => failures.push(format!("the X(F_2^4) → X(F_3^5) construction failed: {e}")),
    }

    let mut vandermonde = 0usize;
    for p in [2u32, 3, 5, 7] {
        for m in 1..=p {
            for k in 0..m {
                vandermonde += 1;
                let outcome = vandermonde_skeleton_map(m, k, prime(p)).and_then(|map| {
                    let source = ComplexDescriptor::skeleton(m, k)?;
                    Ok(check_nondegenerate(&source, &map)?)
                });
                match outcome {
                    Ok(CheckResult::Nondegenerate) => {}
                    Ok(CheckResult::Degenerate { simplex }) => failures.push(format!(
                        "Vandermonde map (m={m}, k={k}, p={p}) degenerate on {simplex:?}"
                    )),
                    Err(e) => {
                        failures.push(format!("Vandermonde map (m={m}, k={k}, p={p}) failed: {e}"))
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut sampled = 0usize;
    let mut attempts = 0usize;
    while sampled < 20 && attempts < 10_000 {
        attempts += 1;
        let p = *[2u32, 3, 5].choose(&mut rng).expect("nonempty");
        let m = rng.gen_range(1..=7u32);
        let k = rng.gen_range(0..=m);
        let n = log_dimension(m, k, prime(p)) + rng.gen_range(0..2u32);
        let fits = u64::from(p)
            .checked_pow(n)
            .is_some_and(|size| size <= 1 << 20);
        if !fits {
            continue;
        }
        sampled += 1;
        let outcome = greedy_skeleton_map(m, k, prime(p), n).and_then(|map| {
            let source = ComplexDescriptor::skeleton(m, k)?;
            Ok(check_nondegenerate(&source, &map)?)
        });
        match outcome {
            Ok(CheckResult::Nondegenerate) => {}
            Ok(CheckResult::Degenerate { simplex }) => failures.push(format!(
                "greedy map (m={m}, k={k}, p={p}, n={n}) degenerate on {simplex:?} [seed {}]",
                options.seed
            )),
            Err(e) => failures.push(format!(
                "greedy map (m={m}, k={k}, p={p}, n={n}) failed: {e} [seed {}]",
                options.seed
            )),
        }
    }
    if sampled < 20 {
        failures.push(format!(
            "only {sampled} greedy samples drawn in {attempts} attempts [seed {}]",
            options.seed
        ));
    }

    report(
        4,
        "constructed witnesses",
        failures,
        format!(
            "0/1 construction on X(F_2^4), {vandermonde} Vandermonde maps, {sampled} sampled greedy maps: all nondegenerate"
        ),
    )
}

/// Criterion 5: universal-complex invariants — the own-field family, both
/// cross-field exact values, and the 0/1 lifts to p ∈ {5, 7}.
fn criterion_universal(options: &VerifyOptions) -> CriterionReport {
    const NAME: &str = "universal-complex invariants";
    let mut failures = Vec::new();
    let budget = SearchBudget::unlimited();

    // Own-field family s_p(X(F_p^n)) = p^n − 1 − n, verified constructively:
    // the returned witness must itself pass the nondegeneracy check.
    for (p, n) in [(2u32, 2u32), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let expected =
            registry::published_universal_value(p, n, p).expect("own-field family is published");
        verify_universal_value(p, n, p, expected, budget, &mut failures);
    }

    // 0/1 lifts: exact via a dimension floor, no exhaustive search needed.
    for q in [5u32, 7] {
        let expected =
            registry::published_universal_value(2, 4, q).expect("lift values are published");
        verify_universal_value(2, 4, q, expected, budget, &mut failures);
    }

    // The two cross-field exact values rest on exhaustive searches.
    let mut slow_note = String::new();
    if options.skip_slow {
        let f33 = ComplexDescriptor::universal(prime(3), 3).expect("X(F_3^3) is valid");
        match check_nondegenerate(&f33, &crate::invariants::build_f33_to_f25_map()) {
            Ok(CheckResult::Nondegenerate) => {}
            Ok(CheckResult::Degenerate { simplex }) => failures.push(format!(
                "the X(F_3^3) → X(F_2^5) construction is degenerate on {simplex:?}"
            )),
            Err(e) => failures.push(format!("the X(F_3^3) → X(F_2^5) construction failed: {e}")),
        }
        slow_note = "; witnesses confirm s_3(X(F_2^4)) ≥ 10 and s_2(X(F_3^3)) ≥ 21, matching exhaustions skipped".to_owned();
    } else {
        for (p, n, q, exhausted_r) in [(2u32, 4u32, 3u32, 4u32), (3, 3, 2, 4)] {
            let expected = registry::published_universal_value(p, n, q)
                .expect("cross-field values are published");
            if let Some(result) = verify_universal_value(p, n, q, expected, budget, &mut failures) {
                match result.certificate.nonexistence {
                    Some(NonexistenceEvidence::Exhausted { r, nodes }) if r == exhausted_r => {
                        slow_note.push_str(&format!(
                            "; s_{q}(X(F_{p}^{n})) = {expected} with exhaustion at r = {r} ({nodes} nodes)"
                        ));
                    }
                    other => failures.push(format!(
                        "s_{q}(X(F_{p}^{n})) should carry an exhausted-search proof at r = {exhausted_r}, got {other:?}"
                    )),
                }
            }
        }
    }

    let status = if !failures.is_empty() {
        CriterionStatus::Fail
    } else if options.skip_slow {
        CriterionStatus::Skipped
    } else {
        CriterionStatus::Pass
    };
    let detail = if failures.is_empty() {
        format!("own-field family (5 values), 0/1 lifts to p ∈ {{5,7}}, cross-field values verified{slow_note}")
    } else {
        join_failures(&failures)
    };
    CriterionReport {
        id: 5,
        name: NAME,
        status,
        detail,
    }
}

/// Checks one universal value: exactness, registry agreement, and a
/// verifying witness. Returns the result for further inspection.
fn verify_universal_value(
    p: u32,
    n: u32,
    q: u32,
    expected: u32,
    budget: SearchBudget,
    failures: &mut Vec<String>,
) -> Option<crate::invariants::InvariantResult> {
    let result = match sp_universal(prime(p), n, prime(q), budget) {
        Ok(result) => result,
        Err(e) => {
            failures.push(format!("s_{q}(X(F_{p}^{n})) failed: {e}"));
            return None;
        }
    };
    if result.value.exact() != Some(expected) {
        failures.push(format!(
            "s_{q}(X(F_{p}^{n})) computed {} ≠ published {expected}",
            result.value
        ));
        return None;
    }
    let source = ComplexDescriptor::universal(prime(p), n).expect("universal source is valid");
    match &result.certificate.witness {
        Some(witness) => match check_nondegenerate(&source, witness) {
            Ok(CheckResult::Nondegenerate) => {}
            Ok(CheckResult::Degenerate { simplex }) => failures.push(format!(
                "witness for s_{q}(X(F_{p}^{n})) degenerate on {simplex:?}"
            )),
            Err(e) => failures.push(format!(
                "witness for s_{q}(X(F_{p}^{n})) failed to verify: {e}"
            )),
        },
        None => failures.push(format!("s_{q}(X(F_{p}^{n})) returned no witness")),
    }
    Some(result)
}

/// Criterion 6: the minimal-nonsimplex counting formula equals brute-force
/// enumeration on every small instance.
fn criterion_counting(_options: &VerifyOptions) -> CriterionReport {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for p in [2u32, 3, 5] {
        for n in 2.. {
            if u64::from(p).pow(n) > 27 {
                break;
            }
            for j in 1..=n {
                checked += 1;
                let formula = count_minimal_nonsimplices(prime(p), n, j);
                let brute = enumerate_minimal_nonsimplices(prime(p), n, j).map(|list| list.len());
                match (formula, brute) {
                    (Ok(formula), Ok(brute)) if formula == BigUint::from(brute) => {}
                    (Ok(formula), Ok(brute)) => failures.push(format!(
                        "(p={p}, n={n}, j={j}): formula {formula} ≠ enumerated {brute}"
                    )),
                    (formula, brute) => failures.push(format!(
                        "(p={p}, n={n}, j={j}): formula {formula:?}, enumeration {brute:?}"
                    )),
                }
            }
        }
    }
    report(
        6,
        "minimal-nonsimplex counting",
        failures,
        format!("{checked} instances agree with brute force"),
    )
}

/// Criterion 7: the s_p = 1 classification agrees with search-derived
/// values for m ≤ 7; search confirms every claimed minimal dimension; the
/// two-extra-vertex system solver matches exhaustive minimization to
/// m = 20.
fn criterion_concordance(options: &VerifyOptions) -> CriterionReport {
    let mut failures = Vec::new();
    let opts = search_options(options);

    let mut cells = 0usize;
    for p in [2u32, 3, 5] {
        for m in 1..=7u32 {
            for k in 0..m {
                cells += 1;
                let result = match sp_skeleton(m, k, prime(p), SearchBudget::unlimited()) {
                    Ok(result) => result,
                    Err(e) => {
                        failures.push(format!("s_{p}(Δ^{m}_({k})) failed: {e}"));
                        continue;
                    }
                };
                let Some(value) = result.value.exact() else {
                    failures.push(format!(
                        "s_{p}(Δ^{m}_({k})) not exact under an unlimited budget: {}",
                        result.value
                    ));
                    continue;
                };
                if classification_sp1(m, k, prime(p)) != (value == 1) {
                    failures.push(format!(
                        "s_p = 1 classification disagrees at (m={m}, k={k}, p={p}): computed value {value}"
                    ));
                }
                // Definition consistency: a map exists at the claimed
                // minimal dimension and none at the level below.
                let r_min = m + 1 - value;
                let source = ComplexDescriptor::skeleton(m, k).expect("valid skeleton");
                match search_nondegenerate_map(&source, prime(p), r_min, &opts) {
                    Ok(SearchOutcome::Found { .. }) => {}
                    Ok(other) => failures.push(format!(
                        "no map found at claimed minimal dimension (m={m}, k={k}, p={p}, r={r_min}): {}",
                        outcome_kind(&other)
                    )),
                    Err(e) => failures.push(format!(
                        "search at (m={m}, k={k}, p={p}, r={r_min}) failed: {e}"
                    )),
                }
                if r_min > k + 1 {
                    match search_nondegenerate_map(&source, prime(p), r_min - 1, &opts) {
                        Ok(SearchOutcome::ExhaustedNone { .. }) => {}
                        Ok(other) => failures.push(format!(
                            "level below the claimed minimum not excluded (m={m}, k={k}, p={p}, r={}): {}",
                            r_min - 1,
                            outcome_kind(&other)
                        )),
                        Err(e) => failures.push(format!(
                            "search at (m={m}, k={k}, p={p}, r={}) failed: {e}",
                            r_min - 1
                        )),
                    }
                }
            }
        }
    }

    let mut sp2_cells = 0usize;
    for p in [2u32, 3, 5, 7] {
        for m in 1..=20u32 {
            for k in 0..=m {
                sp2_cells += 1;
                let closed = solve_sp2_system(m, k, prime(p));
                let brute = brute_force_sp2_minimum(m, k, prime(p));
                match (&closed, brute) {
                    (None, None) => {}
                    (Some(certificate), Some(minimum))
                        if certificate.sum() == minimum
                            && certificate.satisfies_system(k, prime(p)) => {}
                    _ => failures.push(format!(
                        "two-extra-vertex system at (m={m}, k={k}, p={p}): solver {:?}, exhaustive minimum {brute:?}",
                        closed.map(|c| c.sum())
                    )),
                }
            }
        }
    }

    report(
        7,
        "closed forms vs search",
        failures,
        format!(
            "{cells} cells: classification and minimal dimension search-confirmed; solver matches exhaustive minimization on {sp2_cells} cells"
        ),
    )
}

/// The exhaustive side of criterion 7: minimize `x1 + x2 + x11` over the
/// full constraint system, `None` when nothing fits inside `m − 1`.
fn brute_force_sp2_minimum(m: u32, k: u32, p: Prime) -> Option<u32> {
    let q = p.get();
    let mut best: Option<u32> = None;
    for x1 in 0..=m {
        for x2 in 0..=m {
            for x11 in 0..=m {
                let certificate = Sp2Certificate {
                    x1,
                    x2,
                    x11,
                    multiplicity: (x11 + q - 2) / (q - 1),
                };
                if certificate.satisfies_system(k, p) && certificate.sum() < m {
                    best = Some(best.map_or(certificate.sum(), |b| b.min(certificate.sum())));
                }
            }
        }
    }
    best
}

/// Criterion 8: the three monotonicity rules hold across every computed
/// table with zero violations.
fn criterion_monotonicity(_options: &VerifyOptions) -> CriterionReport {
    let mut failures = Vec::new();
    let mut audited = 0usize;
    for (p, max_m) in [(3u32, 9u32), (2, 7), (5, 7), (7, 7)] {
        let mut table = BTreeMap::new();
        for m in 1..=max_m {
            for k in 0..=m {
                match sp_skeleton(m, k, prime(p), SearchBudget::unlimited()) {
                    Ok(result) => match result.value.exact() {
                        Some(value) => {
                            table.insert((m, k), value);
                        }
                        None => failures.push(format!(
                            "s_{p}(Δ^{m}_({k})) not exact under an unlimited budget"
                        )),
                    },
                    Err(e) => failures.push(format!("s_{p}(Δ^{m}_({k})) failed: {e}")),
                }
            }
        }
        audited += 1;
        for violation in monotonicity_audit(&table) {
            failures.push(format!("p = {p}: {violation}"));
        }
    }
    report(
        8,
        "monotonicity audit",
        failures,
        format!(
            "{audited} computed tables (p = 3 to m ≤ 9; p ∈ {{2, 5, 7}} to m ≤ 7), zero violations"
        ),
    )
}

/// Criterion 9: five seeded property suites of at least 100 cases each.
fn criterion_properties(options: &VerifyOptions) -> CriterionReport {
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    type Suite = (&'static str, fn(u64) -> (usize, Vec<String>));
    let suites: [Suite; 5] = [
        ("rank-elementary-invariance", suite_rank_invariance),
        ("matroid-downward-closure", suite_downward_closure),
        ("scalar-reweighting", suite_scalar_reweighting),
        ("canonical-witness-idempotence", suite_canonical_idempotence),
        ("reduced-vs-unreduced-search", suite_search_agreement),
    ];
    for (index, (name, suite)) in suites.iter().enumerate() {
        let (cases, suite_failures) = suite(options.seed.wrapping_add(index as u64));
        parts.push(format!("{name}: {cases} cases"));
        failures.extend(
            suite_failures
                .into_iter()
                .map(|f| format!("{name}: {f} [seed {}]", options.seed)),
        );
    }
    report(9, "property suites", failures, parts.join(", "))
}

/// Rank is invariant under elementary row operations.
fn suite_rank_invariance(seed: u64) -> (usize, Vec<String>) {
    const CASES: usize = 120;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..CASES {
        let p = prime(*[2u32, 3, 5, 7].choose(&mut rng).expect("nonempty"));
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let data: Vec<u32> = (0..rows * cols)
            .map(|_| rng.gen_range(0..p.get()))
            .collect();
        let mut matrix = FpMatrix::new(p, rows, cols, data).expect("shape is consistent");
        let original = matrix.rank();
        for _ in 0..rng.gen_range(1..=8) {
            match rng.gen_range(0..3) {
                0 => {
                    let i = rng.gen_range(0..rows);
                    let j = rng.gen_range(0..rows);
                    matrix.swap_rows(i, j);
                }
                1 => {
                    let i = rng.gen_range(0..rows);
                    let c = rng.gen_range(1..p.get().max(2));
                    matrix.scale_row(i, c);
                }
                _ => {
                    let target = rng.gen_range(0..rows);
                    let source = rng.gen_range(0..rows);
                    if target != source {
                        let c = rng.gen_range(0..p.get());
                        matrix.add_scaled_row(target, source, c);
                    }
                }
            }
        }
        let after = matrix.rank();
        if after != original {
            failures.push(format!(
                "case {case}: rank changed {original} → {after} over F_{}",
                p.get()
            ));
        }
    }
    (CASES, failures)
}

/// Independent sets of a universal complex are downward closed, and
/// supersets of dependent sets stay dependent.
fn suite_downward_closure(seed: u64) -> (usize, Vec<String>) {
    const CASES: usize = 120;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..CASES {
        let p = *[2u32, 3].choose(&mut rng).expect("nonempty");
        let n = rng.gen_range(2..=4u32);
        let complex = ComplexDescriptor::universal(prime(p), n).expect("valid universal complex");
        let vertices = complex.vertex_count().expect("has vertices");
        let size = rng.gen_range(1..=n as usize + 1);
        let face = rand::seq::index::sample(&mut rng, vertices, size.min(vertices)).into_vec();
        let independent = complex.is_simplex(&face).expect("in-range face");
        if independent {
            for mask in 1u32..(1 << face.len()) - 1 {
                let sub: Vec<usize> = face
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                if !complex.is_simplex(&sub).expect("in-range face") {
                    failures.push(format!(
                        "case {case}: independent set {face:?} has dependent subset {sub:?} (p={p}, n={n})"
                    ));
                }
            }
        } else if face.len() < vertices {
            let extra = (0..vertices)
                .find(|v| !face.contains(v))
                .expect("a vertex is left");
            let mut superset = face.clone();
            superset.push(extra);
            if complex.is_simplex(&superset).expect("in-range face") {
                failures.push(format!(
                    "case {case}: dependent set {face:?} has independent superset {superset:?} (p={p}, n={n})"
                ));
            }
        }
    }
    (CASES, failures)
}

/// Rescaling each image by a nonzero scalar preserves nondegeneracy.
fn suite_scalar_reweighting(seed: u64) -> (usize, Vec<String>) {
    const CASES: usize = 120;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..CASES {
        let p = *[2u32, 3, 5].choose(&mut rng).expect("nonempty");
        let m = rng.gen_range(1..=6u32);
        let k = rng.gen_range(0..=m);
        let n = log_dimension(m, k, prime(p));
        let outcome = greedy_skeleton_map(m, k, prime(p), n).and_then(|map| {
            let scalars: Vec<u32> = (0..map.len()).map(|_| rng.gen_range(1..p)).collect();
            let reweighted = apply_scalar_reweighting(&map, &scalars)?;
            let source = ComplexDescriptor::skeleton(m, k)?;
            Ok(check_nondegenerate(&source, &reweighted)?)
        });
        match outcome {
            Ok(CheckResult::Nondegenerate) => {}
            Ok(CheckResult::Degenerate { simplex }) => failures.push(format!(
                "case {case}: reweighting broke (m={m}, k={k}, p={p}, n={n}) on {simplex:?}"
            )),
            Err(e) => failures.push(format!(
                "case {case}: reweighting of (m={m}, k={k}, p={p}, n={n}) failed: {e}"
            )),
        }
    }
    (CASES, failures)
}

/// Canonicalizing a witness is idempotent.
fn suite_canonical_idempotence(seed: u64) -> (usize, Vec<String>) {
    const CASES: usize = 140;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..CASES {
        let p = prime(*[2u32, 3, 5, 7].choose(&mut rng).expect("nonempty"));
        let r = rng.gen_range(1..=4u32);
        let len = rng.gen_range(1..=8usize);
        let images: Vec<FpVector> = (0..len)
            .map(|_| loop {
                let coords: Vec<u32> = (0..r).map(|_| rng.gen_range(0..p.get())).collect();
                if coords.iter().any(|&c| c != 0) {
                    return FpVector::new(p, coords);
                }
            })
            .collect();
        let map = VertexMap::new(p, r, images).expect("images are valid");
        let outcome = canonical_witness(&map)
            .and_then(|once| canonical_witness(&once).map(|twice| (once, twice)));
        match outcome {
            Ok((once, twice)) if once == twice => {}
            Ok(_) => failures.push(format!(
                "case {case}: canonicalization not idempotent (p={}, r={r}, len={len})",
                p.get()
            )),
            Err(e) => failures.push(format!("case {case}: canonicalization failed: {e}")),
        }
    }
    (CASES, failures)
}

/// Symmetry-reduced and unreduced searches agree on existence for every
/// small source.
fn suite_search_agreement(seed: u64) -> (usize, Vec<String>) {
    const CASES: usize = 110;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..CASES {
        let p = *[2u32, 3].choose(&mut rng).expect("nonempty");
        let r = rng.gen_range(1..=3u32);
        let source = random_small_source(&mut rng);
        let run = |reduce: bool| {
            search_nondegenerate_map(
                &source,
                prime(p),
                r,
                &SearchOptions {
                    budget: SearchBudget::unlimited(),
                    workers: 1,
                    symmetry_reduction: reduce,
                },
            )
        };
        match (run(true), run(false)) {
            (Ok(reduced), Ok(unreduced)) => {
                let kinds = (outcome_kind(&reduced), outcome_kind(&unreduced));
                if kinds.0 != kinds.1 {
                    failures.push(format!(
                        "case {case}: outcomes disagree ({} vs {}) on {} with p={p}, r={r}",
                        kinds.0,
                        kinds.1,
                        source.to_json()
                    ));
                    continue;
                }
                for outcome in [&reduced, &unreduced] {
                    if let SearchOutcome::Found { map, .. } = outcome {
                        match check_nondegenerate(&source, map) {
                            Ok(CheckResult::Nondegenerate) => {}
                            other => failures.push(format!(
                                "case {case}: returned witness fails verification ({other:?}) on {}",
                                source.to_json()
                            )),
                        }
                    }
                }
            }
            (reduced, unreduced) => failures.push(format!(
                "case {case}: search errored (reduced: {}, unreduced: {}) on {}",
                reduced.is_ok(),
                unreduced.is_ok(),
                source.to_json()
            )),
        }
    }
    (CASES, failures)
}

/// A random source complex with at most 6 vertices.
fn random_small_source(rng: &mut ChaCha8Rng) -> ComplexDescriptor {
    match rng.gen_range(0..3u32) {
        0 => {
            let m = rng.gen_range(1..=5u32);
            let k = rng.gen_range(0..=m);
            ComplexDescriptor::skeleton(m, k).expect("valid skeleton")
        }
        1 => {
            let (p, n) = *[(2u32, 1u32), (2, 2), (3, 1)]
                .choose(rng)
                .expect("nonempty");
            ComplexDescriptor::universal(prime(p), n).expect("valid universal complex")
        }
        _ => {
            let vertices = rng.gen_range(1..=6usize);
            let simplices = (0..rng.gen_range(1..=4usize))
                .map(|_| {
                    let mask = rng.gen_range(1..(1u32 << vertices));
                    (0..vertices).filter(|&v| mask & (1 << v) != 0).collect()
                })
                .collect();
            ComplexDescriptor::explicit(vertices, simplices).expect("generated simplices are valid")
        }
    }
}

fn outcome_kind(outcome: &SearchOutcome) -> &'static str {
    match outcome {
        SearchOutcome::Found { .. } => "found",
        SearchOutcome::ExhaustedNone { .. } => "exhausted",
        SearchOutcome::BudgetExceeded { .. } => "budget-exceeded",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_criteria_pass() {
        for id in [4, 6] {
            let report = run_criterion(id, &VerifyOptions::default()).expect("criterion exists");
            assert_eq!(report.status, CriterionStatus::Pass, "{}", report.line());
        }
    }

    #[test]
    fn skip_slow_marks_criterion_3_skipped() {
        let options = VerifyOptions {
            skip_slow: true,
            ..VerifyOptions::default()
        };
        let report = run_criterion(3, &options).expect("criterion exists");
        assert_eq!(report.status, CriterionStatus::Skipped);
    }

    #[test]
    fn unknown_criterion_is_none() {
        assert!(run_criterion(0, &VerifyOptions::default()).is_none());
        assert!(run_criterion(10, &VerifyOptions::default()).is_none());
    }

    #[test]
    fn report_line_format() {
        let report = CriterionReport {
            id: 6,
            name: "minimal-nonsimplex counting",
            status: CriterionStatus::Pass,
            detail: "16 instances agree with brute force".to_owned(),
        };
        assert_eq!(
            report.line(),
            "criterion 6 (minimal-nonsimplex counting): PASS — 16 instances agree with brute force"
        );
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let (cases_a, failures_a) = suite_rank_invariance(11);
        let (cases_b, failures_b) = suite_rank_invariance(11);
        assert_eq!(cases_a, cases_b);
        assert_eq!(failures_a, failures_b);
    }
}
