//! The skeleton invariant `s_p(Δ^m_(k))`.

use std::time::Instant;

use super::bounds::{classification_sp1, log_dimension, solve_sp2_system, sp_geq_two};
use super::constructions::{
    all_ones_skeleton_map, greedy_skeleton_map, sp2_witness_map, vandermonde_skeleton_map,
};
use super::{
    Certificate, InvariantError, InvariantResult, InvariantValue, Method, NonexistenceEvidence,
};
use crate::complexes::ComplexDescriptor;
use crate::fplinalg::{FpVector, Prime};
use crate::search::{
    check_nondegenerate, search_nondegenerate_map, CheckResult, SearchBudget, SearchError,
    SearchOptions, SearchOutcome, VertexMap, MAX_SEARCH_TARGET_SIZE,
};

/// Whether `X(F_q^r)` is small enough for the exhaustive driver.
fn target_fits(q: Prime, r: u32) -> bool {
    let mut size = 1u64;
    for _ in 0..r {
        size = match size.checked_mul(u64::from(q.get())) {
            Some(s) if s <= MAX_SEARCH_TARGET_SIZE => s,
            _ => return false,
        };
    }
    true
}

/// What a descent run concluded, before the caller attaches a method.
pub(super) struct Descent {
    pub value: InvariantValue,
    pub certificate: Certificate,
}

/// Downward resolution of the least target dimension, starting from a
/// verified witness.
///
/// Searches `r = witness.r() − 1, witness.r() − 2, …` while maps keep
/// existing, reusing each `Found` as the improved witness. Stops exactly
/// at `floor_r` (the source's largest simplex size, below which no map can
/// exist). An `ExhaustedNone` pins the exact value; running out of node or
/// time budget — or a target too large to search — yields the honest
/// interval from the best witness down to the floor.
pub(super) fn descend_from_witness(
    descriptor: &ComplexDescriptor,
    q: Prime,
    budget: SearchBudget,
    witness: VertexMap,
    floor_r: u32,
) -> Result<Descent, InvariantError> {
    let vertices = descriptor.vertex_count()? as u32;
    let start = Instant::now();
    let mut nodes_used = 0u64;
    let mut witness = witness;
    while witness.r() > floor_r {
        let r_try = witness.r() - 1;
        let remaining = SearchBudget {
            max_nodes: budget.max_nodes.map(|n| n.saturating_sub(nodes_used)),
            max_seconds: budget
                .max_seconds
                .map(|s| (s - start.elapsed().as_secs_f64()).max(0.0)),
        };
        let out_of_budget =
            remaining.max_nodes == Some(0) || remaining.max_seconds.is_some_and(|s| s <= 0.0);
        if out_of_budget || !target_fits(q, r_try) {
            return Ok(Descent {
                value: InvariantValue::Interval {
                    lo: vertices - witness.r(),
                    hi: vertices - floor_r,
                },
                certificate: Certificate {
                    witness: Some(witness),
                    nonexistence: None,
                },
            });
        }
        let options = SearchOptions {
            budget: remaining,
            ..SearchOptions::default()
        };
        match search_nondegenerate_map(descriptor, q, r_try, &options)? {
            SearchOutcome::Found { map, stats } => {
                nodes_used += stats.nodes;
                witness = map;
            }
            SearchOutcome::ExhaustedNone { stats } => {
                return Ok(Descent {
                    value: InvariantValue::Exact(vertices - witness.r()),
                    certificate: Certificate {
                        witness: Some(witness),
                        nonexistence: Some(NonexistenceEvidence::Exhausted {
                            r: r_try,
                            nodes: stats.nodes,
                        }),
                    },
                });
            }
            SearchOutcome::BudgetExceeded { .. } => {
                return Ok(Descent {
                    value: InvariantValue::Interval {
                        lo: vertices - witness.r(),
                        hi: vertices - floor_r,
                    },
                    certificate: Certificate {
                        witness: Some(witness),
                        nonexistence: None,
                    },
                });
            }
        }
    }
    Ok(Descent {
        value: InvariantValue::Exact(vertices - floor_r),
        certificate: Certificate {
            witness: Some(witness),
            nonexistence: Some(NonexistenceEvidence::DimensionFloor { r: floor_r - 1 }),
        },
    })
}

fn finish(
    complex: ComplexDescriptor,
    p: Prime,
    value: InvariantValue,
    method: Method,
    certificate: Certificate,
) -> Result<InvariantResult, InvariantError> {
    let result = InvariantResult {
        complex,
        p,
        value,
        method,
        certificate,
    };
    debug_assert!(matches!(result.certificate_is_consistent(), Ok(true)));
    Ok(result)
}

/// Computes `s_p(Δ^m_(k))`.
///
/// Closed forms decide the full simplex (`k = m` → 0), isolated vertices
/// (`k = 0` → `m`), the Vandermonde range (`m ≤ p` → `m − k`) and the
/// value-1 classification. Otherwise the value is at least 2: the best of
/// the greedy witness (at the counting bound's dimension) and the
/// two-extra-vertex witness (at `m − 1`) anchors a downward search, which
/// returns an exact certified value or an honest interval under the given
/// budget.
pub fn sp_skeleton(
    m: u32,
    k: u32,
    p: Prime,
    budget: SearchBudget,
) -> Result<InvariantResult, InvariantError> {
    if m < 1 || k > m {
        return Err(InvariantError::Domain(format!(
            "skeleton parameters need m ≥ 1 and 0 ≤ k ≤ m, got m = {m}, k = {k}"
        )));
    }
    let descriptor = ComplexDescriptor::skeleton(m, k)?;

    if k == m {
        // The full simplex needs all m+1 images independent, no fewer.
        let r = m as usize + 1;
        let images = (0..r).map(|i| FpVector::basis(p, r, i)).collect();
        let witness = VertexMap::new(p, m + 1, images)?;
        return finish(
            descriptor,
            p,
            InvariantValue::Exact(0),
            Method::closed_form("full-simplex"),
            Certificate {
                witness: Some(witness),
                nonexistence: Some(NonexistenceEvidence::DimensionFloor { r: m }),
            },
        );
    }
    if k == 0 {
        // Isolated vertices all map to the single line of F_p^1.
        let images = (0..=m).map(|_| FpVector::new(p, vec![1])).collect();
        let witness = VertexMap::new(p, 1, images)?;
        return finish(
            descriptor,
            p,
            InvariantValue::Exact(m),
            Method::closed_form("vertices-only"),
            Certificate {
                witness: Some(witness),
                nonexistence: Some(NonexistenceEvidence::DimensionFloor { r: 0 }),
            },
        );
    }
    if m <= p.get() {
        let witness = vandermonde_skeleton_map(m, k, p)?;
        return finish(
            descriptor,
            p,
            InvariantValue::Exact(m - k),
            Method::closed_form("vandermonde"),
            Certificate {
                witness: Some(witness),
                nonexistence: Some(NonexistenceEvidence::DimensionFloor { r: k }),
            },
        );
    }
    if classification_sp1(m, k, p) {
        let witness = all_ones_skeleton_map(m, k, p)?;
        return finish(
            descriptor,
            p,
            InvariantValue::Exact(1),
            Method::closed_form("classification-sp1"),
            Certificate {
                witness: Some(witness),
                nonexistence: Some(NonexistenceEvidence::ClosedForm {
                    r: m - 1,
                    rule: "classification-sp1".to_owned(),
                }),
            },
        );
    }

    // No closed form: the classification's complement puts the value at 2
    // or more, so the two-extra-vertex witness at m−1 exists; the greedy
    // witness may start lower still.
    debug_assert!(sp_geq_two(m, k, p));
    debug_assert!(solve_sp2_system(m, k, p).is_some());
    let n_log = log_dimension(m, k, p);
    let anchor = if n_log < m {
        // Prefer the lower-dimensional greedy anchor; fall back to the
        // two-extra-vertex witness when its lookup tables would not fit.
        match greedy_skeleton_map(m, k, p, n_log) {
            Ok(witness) => witness,
            Err(InvariantError::Search(SearchError::TargetTooLarge { .. })) => {
                sp2_witness_map(m, k, p)?
            }
            Err(other) => return Err(other),
        }
    } else {
        sp2_witness_map(m, k, p)?
    };
    if check_nondegenerate(&descriptor, &anchor)? != CheckResult::Nondegenerate {
        return Err(InvariantError::Internal(format!(
            "anchor witness for m = {m}, k = {k}, p = {p} failed re-verification"
        )));
    }
    let descent = descend_from_witness(&descriptor, p, budget, anchor, k + 1)?;
    finish(
        descriptor,
        p,
        descent.value,
        Method::Search,
        descent.certificate,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(q: u32) -> Prime {
        Prime::new(q).unwrap()
    }

    fn assert_certified(result: &InvariantResult) {
        assert!(result.certificate_is_consistent().unwrap());
        let witness = result.certificate.witness.as_ref().unwrap();
        assert_eq!(
            check_nondegenerate(&result.complex, witness).unwrap(),
            CheckResult::Nondegenerate
        );
    }

    #[test]
    fn table_entry_6_3_3_is_search_resolved() {
        let result = sp_skeleton(6, 3, prime(3), SearchBudget::unlimited()).unwrap();
        assert_eq!(result.value, InvariantValue::Exact(2));
        assert_eq!(result.method, Method::Search);
        assert_certified(&result);
        assert_eq!(result.certificate.witness.as_ref().unwrap().r(), 5);
        match result.certificate.nonexistence {
            Some(NonexistenceEvidence::Exhausted { r: 4, nodes }) => assert!(nodes > 0),
            ref other => panic!("expected exhaustion at r = 4, got {other:?}"),
        }
    }

    #[test]
    fn full_simplex_is_zero() {
        for (m, q) in [(1u32, 2u32), (4, 3), (6, 5)] {
            let result = sp_skeleton(m, m, prime(q), SearchBudget::unlimited()).unwrap();
            assert_eq!(result.value, InvariantValue::Exact(0));
            assert_eq!(result.method, Method::closed_form("full-simplex"));
            assert_certified(&result);
        }
    }

    #[test]
    fn vertices_only_is_m() {
        let result = sp_skeleton(5, 0, prime(3), SearchBudget::unlimited()).unwrap();
        assert_eq!(result.value, InvariantValue::Exact(5));
        assert_eq!(result.method, Method::closed_form("vertices-only"));
        assert_certified(&result);
    }

    #[test]
    fn two_skeleton_of_delta6_mod_2() {
        let result = sp_skeleton(6, 2, prime(2), SearchBudget::unlimited()).unwrap();
        assert_eq!(result.value, InvariantValue::Exact(3));
        assert_eq!(result.method, Method::Search);
        assert_certified(&result);
        // Witness at r = 4, exhaustion at r = 3.
        assert_eq!(result.certificate.witness.as_ref().unwrap().r(), 4);
        assert!(matches!(
            result.certificate.nonexistence,
            Some(NonexistenceEvidence::Exhausted { r: 3, .. })
        ));
    }

    #[test]
    fn vandermonde_range_is_m_minus_k() {
        let result = sp_skeleton(4, 1, prime(5), SearchBudget::unlimited()).unwrap();
        assert_eq!(result.value, InvariantValue::Exact(3));
        assert_eq!(result.method, Method::closed_form("vandermonde"));
        assert_certified(&result);

        let result = sp_skeleton(3, 2, prime(5), SearchBudget::unlimited()).unwrap();
        assert_eq!(result.value, InvariantValue::Exact(1));
        assert_eq!(result.method, Method::closed_form("vandermonde"));
        assert_certified(&result);
    }

    #[test]
    fn classification_value_one() {
        let result = sp_skeleton(8, 7, prime(3), SearchBudget::unlimited()).unwrap();
        assert_eq!(result.value, InvariantValue::Exact(1));
        assert_eq!(result.method, Method::closed_form("classification-sp1"));
        assert_certified(&result);
        assert!(matches!(
            result.certificate.nonexistence,
            Some(NonexistenceEvidence::ClosedForm { r: 7, .. })
        ));
    }

    #[test]
    fn small_table_values_mod_3() {
        // Row m = 4 of the mod-3 table: 4, 2, 1, 1, 0.
        let expected = [4u32, 2, 1, 1, 0];
        for (k, &v) in expected.iter().enumerate() {
            let result = sp_skeleton(4, k as u32, prime(3), SearchBudget::unlimited()).unwrap();
            assert_eq!(result.value, InvariantValue::Exact(v), "k = {k}");
            assert_certified(&result);
        }
    }

    #[test]
    fn budget_cut_returns_honest_interval() {
        let budget = SearchBudget {
            max_nodes: Some(500),
            max_seconds: None,
        };
        let result = sp_skeleton(9, 5, prime(3), budget).unwrap();
        assert_eq!(result.value, InvariantValue::Interval { lo: 2, hi: 4 });
        assert_eq!(result.method, Method::Search);
        assert!(result.certificate.nonexistence.is_none());
        assert_certified(&result);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            sp_skeleton(0, 0, prime(2), SearchBudget::unlimited()),
            Err(InvariantError::Domain(_))
        ));
        assert!(matches!(
            sp_skeleton(3, 4, prime(2), SearchBudget::unlimited()),
            Err(InvariantError::Domain(_))
        ));
    }
}
