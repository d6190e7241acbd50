//! Mod-p Buchstaber invariants of simplicial complexes.
//!
//! For a simplicial complex `K` on `m` vertices and a prime `p`, the mod-p
//! Buchstaber invariant is `s_p(K) = m − r`, where `r` is the least integer
//! such that a *nondegenerate* simplicial map `K → X(F_p^r)` exists. Here
//! `X(F_p^r)` is the universal complex whose vertices are the nonzero vectors
//! of `F_p^r` and whose simplices are the linearly independent subsets; a
//! simplicial map is nondegenerate when every simplex maps onto a simplex of
//! the same dimension.
//!
//! The crate provides:
//!
//! - [`fplinalg`]: exact linear algebra over the prime fields `F_p`
//!   (rank, determinant, inverses) on small dense matrices;
//! - [`complexes`]: complex descriptors (explicit, skeleton `Δ^m_(k)`,
//!   universal `X(F_p^n)`), vertex/face enumeration, and exact counting of
//!   minimal nonsimplices of the universal complexes;
//! - [`search`]: a budgeted, symmetry-reduced exhaustive backtracking search
//!   for nondegenerate maps into `X(F_p^r)`, with scalar-orbit restriction
//!   and basis-prefix pinning, plus map checking and canonicalization;
//! - [`invariants`]: closed-form values and certified bounds for skeleta
//!   `Δ^m_(k)` and for universal complexes, explicit map constructions
//!   (greedy, Vandermonde, coordinate-wise lifts), and a monotonicity audit;
//! - [`registry`]: published reference values used as test fixtures only —
//!   never consulted when answering queries;
//! - [`verify`]: the end-to-end verification suite driven by the CLI's
//!   `verify-paper` subcommand and the acceptance tests.
//!
//! Vertex indices and vector coordinates are 0-based everywhere, including
//! all serialized formats.

pub mod complexes;
pub mod fplinalg;
pub mod invariants;
pub mod registry;
pub mod search;
pub mod verify;
