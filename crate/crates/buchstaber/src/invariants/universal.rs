//! The invariant `s_q(X(F_p^n))` of universal complexes.

use std::time::Instant;

use super::constructions::{
    build_f24_to_f35_map, build_f33_to_f25_map, identity_universal_map, lift_mod_p,
};
use super::skeleton::descend_from_witness;
use super::{
    Certificate, InvariantError, InvariantResult, InvariantValue, Method, NonexistenceEvidence,
};
use crate::complexes::ComplexDescriptor;
use crate::fplinalg::Prime;
use crate::search::{
    check_nondegenerate, search_nondegenerate_map, CheckResult, SearchBudget, SearchOptions,
    SearchOutcome, MAX_SEARCH_TARGET_SIZE,
};

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

/// Computes `s_q(X(F_{p_src}^{n_src}))`.
///
/// Closed forms: the identity witness gives `p^n − 1 − n` when `q` is the
/// source's own field, and the 0/1 lift decides `s_q(X(F_2^4)) = 11` for
/// `q ≥ 5`. Two constructions anchor search-resolved cases:
/// `X(F_2^4) → X(F_3^5)` (deciding the value 10) and the pairing map
/// `X(F_3^3) → X(F_2^5)` (deciding the value 21). Every other instance
/// ascends `r` from the dimension floor, exhausting levels until a map is
/// found; budget exhaustion yields an honest interval.
pub fn sp_universal(
    p_src: Prime,
    n_src: u32,
    q: Prime,
    budget: SearchBudget,
) -> Result<InvariantResult, InvariantError> {
    let descriptor = ComplexDescriptor::universal(p_src, n_src)?;
    let vertices = descriptor.vertex_count()? as u32;

    if q == p_src {
        // The identity map is a witness at r = n, and no map exists below
        // the source's own largest simplex.
        let witness = identity_universal_map(p_src, n_src)?;
        return finish(
            descriptor,
            q,
            InvariantValue::Exact(vertices - n_src),
            Method::closed_form("identity-universal"),
            Certificate {
                witness: Some(witness),
                nonexistence: Some(NonexistenceEvidence::DimensionFloor { r: n_src - 1 }),
            },
        );
    }

    if p_src.get() == 2 && n_src == 4 && q.get() >= 5 {
        // The 0/1 lift of the identity stays nondegenerate: 4×4 0/1
        // determinants have absolute value at most 3 < q.
        let identity = identity_universal_map(p_src, n_src)?;
        let witness = lift_mod_p(&descriptor, &identity, q)?;
        return finish(
            descriptor,
            q,
            InvariantValue::Exact(vertices - n_src),
            Method::closed_form("zero-one-lift"),
            Certificate {
                witness: Some(witness),
                nonexistence: Some(NonexistenceEvidence::DimensionFloor { r: n_src - 1 }),
            },
        );
    }

    // Search-resolved instances with a known construction one level above
    // the floor: descend from the constructed witness.
    let constructed = if p_src.get() == 2 && n_src == 4 && q.get() == 3 {
        Some(build_f24_to_f35_map())
    } else if p_src.get() == 3 && n_src == 3 && q.get() == 2 {
        Some(build_f33_to_f25_map())
    } else {
        None
    };
    if let Some(witness) = constructed {
        if check_nondegenerate(&descriptor, &witness)? != CheckResult::Nondegenerate {
            return Err(InvariantError::Internal(format!(
                "constructed witness for X(F_{p_src}^{n_src}) over F_{q} failed re-verification"
            )));
        }
        let descent = descend_from_witness(&descriptor, q, budget, witness, n_src)?;
        return finish(
            descriptor,
            q,
            descent.value,
            Method::Search,
            descent.certificate,
        );
    }

    // Generic fallback: ascend r from the dimension floor, accumulating
    // exhaustion evidence, until a witness appears.
    let start = Instant::now();
    let mut nodes_used = 0u64;
    let mut previous = NonexistenceEvidence::DimensionFloor { r: n_src - 1 };
    let mut r = n_src;
    loop {
        let remaining = SearchBudget {
            max_nodes: budget.max_nodes.map(|n| n.saturating_sub(nodes_used)),
            max_seconds: budget
                .max_seconds
                .map(|s| (s - start.elapsed().as_secs_f64()).max(0.0)),
        };
        let out_of_budget =
            remaining.max_nodes == Some(0) || remaining.max_seconds.is_some_and(|s| s <= 0.0);
        if out_of_budget || !target_fits(q, r) {
            // Levels below r are exhausted, so the value is at most
            // vertices − r; without any witness the lower end stays 0.
            return finish(
                descriptor,
                q,
                InvariantValue::Interval {
                    lo: 0,
                    hi: vertices - r,
                },
                Method::Search,
                Certificate::default(),
            );
        }
        let options = SearchOptions {
            budget: remaining,
            ..SearchOptions::default()
        };
        match search_nondegenerate_map(&descriptor, q, r, &options)? {
            SearchOutcome::Found { map, .. } => {
                return finish(
                    descriptor,
                    q,
                    InvariantValue::Exact(vertices - r),
                    Method::Search,
                    Certificate {
                        witness: Some(map),
                        nonexistence: Some(previous),
                    },
                );
            }
            SearchOutcome::ExhaustedNone { stats } => {
                nodes_used += stats.nodes;
                previous = NonexistenceEvidence::Exhausted {
                    r,
                    nodes: stats.nodes,
                };
                r += 1;
            }
            SearchOutcome::BudgetExceeded { .. } => {
                return finish(
                    descriptor,
                    q,
                    InvariantValue::Interval {
                        lo: 0,
                        hi: vertices - r,
                    },
                    Method::Search,
                    Certificate::default(),
                );
            }
        }
    }
}
