//! Mod-p Buchstaber invariants.
//!
//! For a simplicial complex `K` on `m` vertices, `s_p(K) = m − r`, where
//! `r` is the least integer such that a nondegenerate simplicial map
//! `K → X(F_p^r)` exists. This module computes `s_p` for simplex skeleta
//! `Δ^m_(k)` ([`sp_skeleton`]) and for universal complexes
//! ([`sp_universal`]), preferring closed-form rules and explicit witness
//! constructions, and falling back to exhaustive symmetry-reduced search.
//!
//! Every exact value is certified: a witness map at the minimal target
//! dimension `r`, plus nonexistence evidence at `r − 1` (an exhausted
//! search, a dimension floor, or a closed-form rule).

mod audit;
mod bounds;
mod constructions;
mod skeleton;
mod universal;

pub use audit::{monotonicity_audit, MonotonicityRule, MonotonicityViolation};
pub(crate) use bounds::log_dimension;
pub use bounds::{
    classification_sp1, min_safe_prime, solve_sp2_system, sp_geq_two, sp_lower_bound_log,
    Sp2Certificate,
};
pub use constructions::{
    all_ones_skeleton_map, build_f24_to_f35_map, build_f33_to_f25_map, greedy_skeleton_map,
    identity_universal_map, lift_mod_p, sp2_witness_map, vandermonde_skeleton_map,
};
pub use skeleton::sp_skeleton;
pub use universal::sp_universal;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{ComplexDescriptor, ComplexError};
use crate::fplinalg::{FpError, Prime};
use crate::search::{SearchError, VertexMap};

/// Errors from invariant computations.
#[derive(Debug, Error)]
pub enum InvariantError {
    /// Parameters outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A construction's precondition does not hold for these parameters.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Reinterpreting a 0/1 map over a larger field broke nondegeneracy.
    #[error("lift is degenerate on simplex {simplex:?}")]
    LiftDegenerate { simplex: Vec<usize> },
    /// A constructed witness failed re-verification: an internal bug.
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Fp(#[from] FpError),
}

/// An invariant value: exact, or an interval when a budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantValue {
    Exact(u32),
    /// `lo ≤ s_p ≤ hi`, both inclusive; `lo` is backed by a witness, and
    /// the gap up to `hi` is what the exhausted budget left unproven.
    Interval {
        lo: u32,
        hi: u32,
    },
}

impl InvariantValue {
    pub fn exact(&self) -> Option<u32> {
        match *self {
            InvariantValue::Exact(v) => Some(v),
            InvariantValue::Interval { .. } => None,
        }
    }

    pub fn lo(&self) -> u32 {
        match *self {
            InvariantValue::Exact(v) => v,
            InvariantValue::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> u32 {
        match *self {
            InvariantValue::Exact(v) => v,
            InvariantValue::Interval { hi, .. } => hi,
        }
    }
}

impl std::fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            InvariantValue::Exact(v) => write!(f, "{v}"),
            InvariantValue::Interval { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

/// How a result was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// A proven rule decided the value; the string names the rule.
    ClosedForm(String),
    /// Witness constructions plus exhaustive search decided the value.
    Search,
    /// Answered from the persistent cache.
    Cached,
    /// Looked up from the published reference tables (test fixtures only;
    /// computations never return this).
    Registry,
}

impl Method {
    pub(crate) fn closed_form(rule: &str) -> Method {
        Method::ClosedForm(rule.to_owned())
    }
}

/// Why no nondegenerate map into `X(F_p^r)` exists at some level `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonexistenceEvidence {
    /// `r` is smaller than the complex's largest simplex, so images could
    /// never be linearly independent.
    DimensionFloor { r: u32 },
    /// An exhaustive symmetry-reduced search traversed the whole tree.
    Exhausted { r: u32, nodes: u64 },
    /// A proven rule excludes this level.
    ClosedForm { r: u32, rule: String },
}

impl NonexistenceEvidence {
    pub fn r(&self) -> u32 {
        match *self {
            NonexistenceEvidence::DimensionFloor { r }
            | NonexistenceEvidence::Exhausted { r, .. }
            | NonexistenceEvidence::ClosedForm { r, .. } => r,
        }
    }
}

/// The proof artifacts accompanying a result.
///
/// For an exact value `v` on an `M`-vertex complex, `witness` maps into
/// `X(F_p^r)` with `r = M − v`, and `nonexistence` covers `r − 1`. For an
/// interval, the witness backs the lower endpoint and `nonexistence` is
/// absent — that missing half is exactly the unproven side.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Certificate {
    pub witness: Option<VertexMap>,
    pub nonexistence: Option<NonexistenceEvidence>,
}

/// A computed invariant with its provenance and proof artifacts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantResult {
    pub complex: ComplexDescriptor,
    pub p: Prime,
    pub value: InvariantValue,
    pub method: Method,
    pub certificate: Certificate,
}

impl InvariantResult {
    /// Consistency of the certificate with the claimed value; used by
    /// tests and debug assertions.
    pub fn certificate_is_consistent(&self) -> Result<bool, InvariantError> {
        let vertices = self.complex.vertex_count()? as u32;
        if let Some(witness) = &self.certificate.witness {
            if witness.len() as u32 != vertices {
                return Ok(false);
            }
            // The witness must realize the lower endpoint.
            if vertices - witness.r() != self.value.lo() {
                return Ok(false);
            }
        }
        if let (InvariantValue::Exact(v), Some(evidence)) =
            (&self.value, &self.certificate.nonexistence)
        {
            // Nonexistence must sit one level below the witness dimension.
            if evidence.r() + 1 != vertices - v {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fplinalg::FpVector;

    #[test]
    fn invariant_value_accessors() {
        let e = InvariantValue::Exact(3);
        assert_eq!(e.exact(), Some(3));
        assert_eq!((e.lo(), e.hi()), (3, 3));
        assert_eq!(e.to_string(), "3");
        let i = InvariantValue::Interval { lo: 2, hi: 4 };
        assert_eq!(i.exact(), None);
        assert_eq!((i.lo(), i.hi()), (2, 4));
        assert_eq!(i.to_string(), "[2,4]");
    }

    #[test]
    fn invariant_result_round_trips_through_json() {
        let p = Prime::new(2).unwrap();
        let witness = VertexMap::new(
            p,
            2,
            vec![
                FpVector::new(p, vec![1, 0]),
                FpVector::new(p, vec![0, 1]),
                FpVector::new(p, vec![1, 1]),
            ],
        )
        .unwrap();
        let result = InvariantResult {
            complex: ComplexDescriptor::skeleton(2, 1).unwrap(),
            p,
            value: InvariantValue::Exact(1),
            method: Method::Search,
            certificate: Certificate {
                witness: Some(witness),
                nonexistence: Some(NonexistenceEvidence::DimensionFloor { r: 1 }),
            },
        };
        let json = serde_json::to_string(&result).unwrap();
        let back: InvariantResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, result);
        assert!(result.certificate_is_consistent().unwrap());
    }

    #[test]
    fn certificate_consistency_detects_mismatches() {
        let p = Prime::new(2).unwrap();
        let result = InvariantResult {
            complex: ComplexDescriptor::skeleton(2, 1).unwrap(),
            p,
            value: InvariantValue::Exact(2),
            method: Method::Search,
            certificate: Certificate {
                witness: None,
                // Claims value 2 on 3 vertices, so r = 1 and evidence must
                // be at r = 0; this one is off by one.
                nonexistence: Some(NonexistenceEvidence::DimensionFloor { r: 1 }),
            },
        };
        assert!(!result.certificate_is_consistent().unwrap());
    }
}
