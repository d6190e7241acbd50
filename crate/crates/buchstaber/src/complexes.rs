//! Simplicial complexes: skeleta of the simplex, universal complexes over
//! `F_p`, and explicit complexes given by their maximal simplices.
//!
//! The three kinds of complex this crate works with are described by
//! [`ComplexDescriptor`]:
//!
//! - `Δ^m_(k)`, the `k`-skeleton of the `m`-simplex: `m + 1` vertices, with
//!   every set of at most `k + 1` vertices a simplex;
//! - `X(F_p^n)`, the universal complex: the nonzero vectors of `F_p^n` as
//!   vertices, with the linearly independent subsets as simplices;
//! - explicit complexes, given by a vertex count and a list of maximal
//!   simplices (vertices not covered by any listed simplex are isolated
//!   points, i.e. maximal simplices of size one).
//!
//! Vertices of `X(F_p^n)` are numbered by *codes*: a vector
//! `(c_1, …, c_n)` has code `Σ c_t · p^{n−t}` (first coordinate most
//! significant), and vertex index `i` corresponds to code `i + 1`, so the
//! indices `0 .. p^n − 1` enumerate the nonzero vectors in ascending code
//! order. All vertex indices are 0-based, in memory and in JSON.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fplinalg::{FpError, FpMatrix, FpVector, Prime};

/// Enumeration guard: functions that materialize all vertices of a
/// universal complex refuse when `p^n` exceeds this, to keep an innocent
/// query from allocating gigabytes. Larger instances must go through
/// [`enumerate_vertices_unbounded`] deliberately.
pub const MAX_ENUMERATED_VERTICES: u128 = 1 << 20;

/// Errors from complex validation, enumeration, and counting.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    /// A skeleton `Δ^m_(k)` needs `k ≤ m`.
    #[error("skeleton Δ^{m}_({k}) is invalid: k must satisfy k <= m")]
    InvalidSkeleton { m: u32, k: u32 },
    /// A universal complex `X(F_p^n)` needs `n ≥ 1`.
    #[error("universal complex X(F_p^{n}) is invalid: n must be at least 1")]
    InvalidUniversalDimension { n: u32 },
    /// An explicit complex needs at least one vertex.
    #[error("an explicit complex needs at least one vertex")]
    EmptyComplex,
    /// A vertex index fell outside `0..vertices`.
    #[error("vertex index {index} out of range for {vertices} vertices")]
    VertexOutOfRange { index: usize, vertices: usize },
    /// A simplex listed the same vertex twice.
    #[error("vertex {index} appears more than once in a simplex")]
    DuplicateVertex { index: usize },
    /// An enumeration would materialize too many objects; see
    /// [`MAX_ENUMERATED_VERTICES`].
    #[error("enumeration of {count} objects exceeds the guard of {limit}")]
    EnumerationTooLarge { count: u128, limit: u128 },
    /// Minimal nonsimplex counting is only defined for `n ≥ 2`.
    #[error("minimal nonsimplex counting requires n >= 2, got n = {n}")]
    CountingDimensionTooSmall { n: u32 },
    /// Minimal nonsimplices of cardinality `j + 1` exist only for `1 ≤ j ≤ n`.
    #[error("minimal nonsimplex parameter j = {j} must satisfy 1 <= j <= n = {n}")]
    NonsimplexSizeOutOfRange { j: u32, n: u32 },
    /// The zero vector is not a vertex of a universal complex.
    #[error("the zero vector is not a vertex of a universal complex")]
    ZeroVectorVertex,
    /// A descriptor failed to parse as JSON.
    #[error("invalid complex JSON: {0}")]
    Json(String),
    /// An underlying field or shape error.
    #[error(transparent)]
    Fp(#[from] FpError),
}

/// A serializable description of a simplicial complex.
///
/// The JSON forms are externally tagged:
///
/// ```json
/// {"skeleton": {"m": 5, "k": 2}}
/// {"universal": {"p": 3, "n": 2}}
/// {"explicit": {"vertices": 4, "maximal_simplices": [[0, 1, 2], [2, 3]]}}
/// ```
///
/// Deserialization checks that `p` is prime; the remaining structural
/// checks run in [`ComplexDescriptor::validate`], which every consuming
/// function calls first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexDescriptor {
    /// The `k`-skeleton `Δ^m_(k)` of the `m`-simplex, on `m + 1` vertices.
    Skeleton { m: u32, k: u32 },
    /// The universal complex `X(F_p^n)` on the `p^n − 1` nonzero vectors.
    Universal { p: Prime, n: u32 },
    /// An arbitrary complex on `0..vertices` given by maximal simplices.
    Explicit {
        vertices: usize,
        maximal_simplices: Vec<Vec<usize>>,
    },
}

impl ComplexDescriptor {
    /// The skeleton `Δ^m_(k)`; requires `k ≤ m`.
    pub fn skeleton(m: u32, k: u32) -> Result<Self, ComplexError> {
        let d = ComplexDescriptor::Skeleton { m, k };
        d.validate()?;
        Ok(d)
    }

    /// The universal complex `X(F_p^n)`; requires `n ≥ 1`.
    pub fn universal(p: Prime, n: u32) -> Result<Self, ComplexError> {
        let d = ComplexDescriptor::Universal { p, n };
        d.validate()?;
        Ok(d)
    }

    /// An explicit complex; requires `vertices ≥ 1`, all indices in range,
    /// and no simplex listing a vertex twice.
    pub fn explicit(
        vertices: usize,
        maximal_simplices: Vec<Vec<usize>>,
    ) -> Result<Self, ComplexError> {
        let d = ComplexDescriptor::Explicit {
            vertices,
            maximal_simplices,
        };
        d.validate()?;
        Ok(d)
    }

    /// Checks the structural invariants of the descriptor.
    pub fn validate(&self) -> Result<(), ComplexError> {
        match self {
            ComplexDescriptor::Skeleton { m, k } => {
                if k > m {
                    return Err(ComplexError::InvalidSkeleton { m: *m, k: *k });
                }
            }
            ComplexDescriptor::Universal { p: _, n } => {
                if *n == 0 {
                    return Err(ComplexError::InvalidUniversalDimension { n: *n });
                }
            }
            ComplexDescriptor::Explicit {
                vertices,
                maximal_simplices,
            } => {
                if *vertices == 0 {
                    return Err(ComplexError::EmptyComplex);
                }
                for simplex in maximal_simplices {
                    let mut seen = vec![false; *vertices];
                    for &v in simplex {
                        if v >= *vertices {
                            return Err(ComplexError::VertexOutOfRange {
                                index: v,
                                vertices: *vertices,
                            });
                        }
                        if seen[v] {
                            return Err(ComplexError::DuplicateVertex { index: v });
                        }
                        seen[v] = true;
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses and validates a descriptor from its JSON form.
    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let d: ComplexDescriptor =
            serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    /// Serializes the descriptor to its JSON form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serialization cannot fail")
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> Result<usize, ComplexError> {
        self.validate()?;
        match self {
            ComplexDescriptor::Skeleton { m, .. } => Ok(*m as usize + 1),
            ComplexDescriptor::Universal { p, n } => {
                let count = universal_vertex_count(*p, *n)?;
                usize::try_from(count).map_err(|_| ComplexError::EnumerationTooLarge {
                    count,
                    limit: usize::MAX as u128,
                })
            }
            ComplexDescriptor::Explicit { vertices, .. } => Ok(*vertices),
        }
    }

    /// Dimension of the complex (largest simplex size minus one).
    pub fn dimension(&self) -> Result<usize, ComplexError> {
        self.validate()?;
        match self {
            ComplexDescriptor::Skeleton { k, .. } => Ok(*k as usize),
            ComplexDescriptor::Universal { n, .. } => Ok(*n as usize - 1),
            ComplexDescriptor::Explicit { .. } => {
                let maximal = self.maximal_simplices()?;
                Ok(maximal.iter().map(Vec::len).max().unwrap_or(1) - 1)
            }
        }
    }

    /// The maximal simplices, each sorted ascending, listed in
    /// lexicographic order.
    ///
    /// For a skeleton these are all `(k+1)`-subsets of the vertices; for a
    /// universal complex `X(F_p^n)` they are the bases of `F_p^n` (this
    /// enumerates all `n`-subsets of vertices, so keep it to small
    /// instances); for an explicit complex the stored list is normalized:
    /// entries sorted, contained simplices dropped, and uncovered vertices
    /// added as singletons.
    pub fn maximal_simplices(&self) -> Result<Vec<Vec<usize>>, ComplexError> {
        self.validate()?;
        match self {
            ComplexDescriptor::Skeleton { m, k } => {
                Ok((0..=*m as usize).combinations(*k as usize + 1).collect())
            }
            ComplexDescriptor::Universal { p, n } => {
                let vectors = enumerate_vertices(*p, *n)?;
                let n = *n as usize;
                Ok((0..vectors.len())
                    .combinations(n)
                    .filter(|combo| {
                        let cols: Vec<FpVector> =
                            combo.iter().map(|&i| vectors[i].clone()).collect();
                        FpMatrix::from_columns(&cols)
                            .expect("uniform vectors")
                            .rank()
                            == n
                    })
                    .collect())
            }
            ComplexDescriptor::Explicit {
                vertices,
                maximal_simplices,
            } => Ok(normalize_maximal(*vertices, maximal_simplices)),
        }
    }

    /// All simplices with exactly `size` vertices, sorted lexicographically.
    ///
    /// `size == 0` yields the empty simplex alone.
    pub fn faces_of_size(&self, size: usize) -> Result<Vec<Vec<usize>>, ComplexError> {
        self.validate()?;
        if size == 0 {
            return Ok(vec![Vec::new()]);
        }
        match self {
            ComplexDescriptor::Skeleton { m, k } => {
                if size > *k as usize + 1 {
                    return Ok(Vec::new());
                }
                Ok((0..=*m as usize).combinations(size).collect())
            }
            ComplexDescriptor::Universal { p, n } => {
                if size > *n as usize {
                    return Ok(Vec::new());
                }
                let vectors = enumerate_vertices(*p, *n)?;
                Ok((0..vectors.len())
                    .combinations(size)
                    .filter(|combo| {
                        let cols: Vec<FpVector> =
                            combo.iter().map(|&i| vectors[i].clone()).collect();
                        FpMatrix::from_columns(&cols)
                            .expect("uniform vectors")
                            .rank()
                            == size
                    })
                    .collect())
            }
            ComplexDescriptor::Explicit { .. } => {
                let mut faces = BTreeSet::new();
                for maximal in self.maximal_simplices()? {
                    if maximal.len() >= size {
                        for combo in maximal.into_iter().combinations(size) {
                            faces.insert(combo);
                        }
                    }
                }
                Ok(faces.into_iter().collect())
            }
        }
    }

    /// Whether a set of vertices spans a simplex of this complex.
    ///
    /// The face may be listed in any order but must consist of distinct,
    /// in-range vertex indices; the empty face is always a simplex.
    pub fn is_simplex(&self, face: &[usize]) -> Result<bool, ComplexError> {
        self.validate()?;
        let vertices = self.vertex_count()?;
        let mut sorted = face.to_vec();
        sorted.sort_unstable();
        for window in sorted.windows(2) {
            if window[0] == window[1] {
                return Err(ComplexError::DuplicateVertex { index: window[0] });
            }
        }
        if let Some(&max) = sorted.last() {
            if max >= vertices {
                return Err(ComplexError::VertexOutOfRange {
                    index: max,
                    vertices,
                });
            }
        }
        match self {
            ComplexDescriptor::Skeleton { k, .. } => Ok(face.len() <= *k as usize + 1),
            ComplexDescriptor::Universal { p, n } => {
                if face.len() > *n as usize {
                    return Ok(false);
                }
                if face.is_empty() {
                    return Ok(true);
                }
                let cols: Result<Vec<FpVector>, ComplexError> = sorted
                    .iter()
                    .map(|&i| universal_vertex_vector(*p, *n, i))
                    .collect();
                let cols = cols?;
                Ok(FpMatrix::from_columns(&cols)?.rank() == cols.len())
            }
            ComplexDescriptor::Explicit { .. } => {
                if sorted.is_empty() {
                    return Ok(true);
                }
                let maximal = self.maximal_simplices()?;
                Ok(maximal
                    .iter()
                    .any(|simplex| is_sorted_subset(&sorted, simplex)))
            }
        }
    }
}

impl std::fmt::Display for ComplexDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComplexDescriptor::Skeleton { m, k } => write!(f, "Δ^{m}_({k})"),
            ComplexDescriptor::Universal { p, n } => write!(f, "X(F_{p}^{n})"),
            ComplexDescriptor::Explicit { vertices, .. } => {
                write!(f, "explicit complex on {vertices} vertices")
            }
        }
    }
}

/// Whether sorted `needle` is a subset of sorted `haystack`.
fn is_sorted_subset(needle: &[usize], haystack: &[usize]) -> bool {
    let mut it = haystack.iter();
    'outer: for &x in needle {
        for &y in it.by_ref() {
            match y.cmp(&x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Sorts, dedupes, prunes contained simplices, and adds isolated vertices.
fn normalize_maximal(vertices: usize, simplices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut sorted: Vec<Vec<usize>> = simplices
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect();
    // Longest first so subset pruning is a single pass.
    sorted.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for simplex in sorted {
        if !kept.iter().any(|k| is_sorted_subset(&simplex, k)) {
            kept.push(simplex);
        }
    }
    let mut covered = vec![false; vertices];
    for simplex in &kept {
        for &v in simplex {
            covered[v] = true;
        }
    }
    for (v, seen) in covered.into_iter().enumerate() {
        if !seen {
            kept.push(vec![v]);
        }
    }
    kept.sort();
    kept
}

/// `p^n` as a u128, or an enumeration error if it overflows.
fn pow_u128(p: Prime, n: u32) -> Result<u128, ComplexError> {
    let base = u128::from(p.get());
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc
            .checked_mul(base)
            .ok_or(ComplexError::EnumerationTooLarge {
                count: u128::MAX,
                limit: MAX_ENUMERATED_VERTICES,
            })?;
    }
    Ok(acc)
}

/// Number of vertices of `X(F_p^n)`, i.e. `p^n − 1`.
pub fn universal_vertex_count(p: Prime, n: u32) -> Result<u128, ComplexError> {
    if n == 0 {
        return Err(ComplexError::InvalidUniversalDimension { n });
    }
    Ok(pow_u128(p, n)? - 1)
}

/// Degree of every vertex in the 1-skeleton of `X(F_p^n)`: a fixed nonzero
/// vector is independent from exactly `p^n − p` others (all nonzero vectors
/// except its own `p − 1` scalar multiples).
pub fn universal_degree(p: Prime, n: u32) -> Result<BigUint, ComplexError> {
    if n == 0 {
        return Err(ComplexError::InvalidUniversalDimension { n });
    }
    let total = BigUint::from(p.get()).pow(n);
    Ok(total - BigUint::from(p.get()))
}

/// The vector for vertex `index` of `X(F_p^n)` (code `index + 1`, first
/// coordinate most significant).
pub fn universal_vertex_vector(p: Prime, n: u32, index: usize) -> Result<FpVector, ComplexError> {
    let count = universal_vertex_count(p, n)?;
    if index as u128 >= count {
        return Err(ComplexError::VertexOutOfRange {
            index,
            vertices: count.min(usize::MAX as u128) as usize,
        });
    }
    let mut code = index as u128 + 1;
    let base = u128::from(p.get());
    let mut coords = vec![0u32; n as usize];
    for t in (0..n as usize).rev() {
        coords[t] = (code % base) as u32;
        code /= base;
    }
    Ok(FpVector::new(p, coords))
}

/// The vertex index of a nonzero vector in `X(F_p^n)` (its code minus one).
pub fn universal_vertex_index(v: &FpVector) -> Result<usize, ComplexError> {
    if v.is_zero() {
        return Err(ComplexError::ZeroVectorVertex);
    }
    let base = u128::from(v.modulus().get());
    let mut code: u128 = 0;
    for &c in v.coords() {
        code = code * base + u128::from(c);
    }
    Ok((code - 1) as usize)
}

/// All nonzero vectors of `F_p^n` in ascending code order, guarded by
/// [`MAX_ENUMERATED_VERTICES`].
pub fn enumerate_vertices(p: Prime, n: u32) -> Result<Vec<FpVector>, ComplexError> {
    let count = pow_u128(p, n)?;
    if count > MAX_ENUMERATED_VERTICES {
        return Err(ComplexError::EnumerationTooLarge {
            count,
            limit: MAX_ENUMERATED_VERTICES,
        });
    }
    enumerate_vertices_unbounded(p, n)
}

/// All nonzero vectors of `F_p^n` in ascending code order, with no size
/// guard. Only call this when a large enumeration is intentional.
pub fn enumerate_vertices_unbounded(p: Prime, n: u32) -> Result<Vec<FpVector>, ComplexError> {
    let count = universal_vertex_count(p, n)?;
    let count = usize::try_from(count).map_err(|_| ComplexError::EnumerationTooLarge {
        count,
        limit: usize::MAX as u128,
    })?;
    (0..count)
        .map(|i| universal_vertex_vector(p, n, i))
        .collect()
}

/// One representative per scalar orbit `{c·v : c ≠ 0}` of the nonzero
/// vectors of `F_p^n`: the multiples whose first nonzero coordinate is 1,
/// in ascending code order. There are `(p^n − 1) / (p − 1)` of them.
pub fn enumerate_orbit_representatives(p: Prime, n: u32) -> Result<Vec<FpVector>, ComplexError> {
    let all = enumerate_vertices(p, n)?;
    Ok(all
        .into_iter()
        .filter(|v| {
            let lead = v.leading_index().expect("vertices are nonzero");
            v.get(lead) == 1
        })
        .collect())
}

/// Counts the minimal nonsimplices of `X(F_p^n)` with `j + 1` vertices.
///
/// A minimal nonsimplex is a dependent set all of whose proper subsets are
/// independent. For `j ≥ 2` the count is
///
/// ```text
/// (p^n − 1)(p^n − p) ⋯ (p^n − p^{j−1}) · (p − 1)^j / (j + 1)!
/// ```
///
/// (choose an ordered independent `j`-tuple, then a combination with all
/// coefficients nonzero; each such set arises from `(j + 1)!` choices).
/// For `j = 1` the pairs `{v, c·v}` with `c ∉ {0, 1}` give
/// `(p^n − 1)(p − 2) / 2`. Defined for `n ≥ 2` and `1 ≤ j ≤ n`.
pub fn count_minimal_nonsimplices(p: Prime, n: u32, j: u32) -> Result<BigUint, ComplexError> {
    if n < 2 {
        return Err(ComplexError::CountingDimensionTooSmall { n });
    }
    if j < 1 || j > n {
        return Err(ComplexError::NonsimplexSizeOutOfRange { j, n });
    }
    let q = BigUint::from(p.get()).pow(n);
    if j == 1 {
        let pairs = (&q - BigUint::one()) * BigUint::from(p.get() - 2);
        debug_assert!((&pairs % 2u32).is_zero());
        return Ok(pairs / 2u32);
    }
    let mut numerator = BigUint::one();
    let mut power = BigUint::one();
    for _ in 0..j {
        numerator *= &q - &power;
        power *= p.get();
    }
    numerator *= BigUint::from(p.get() - 1).pow(j);
    let mut denominator = BigUint::one();
    for t in 2..=u64::from(j) + 1 {
        denominator *= t;
    }
    debug_assert!((&numerator % &denominator).is_zero());
    Ok(numerator / denominator)
}

/// Enumerates the minimal nonsimplices of `X(F_p^n)` with `j + 1` vertices
/// by brute force, as sorted vertex-index sets in lexicographic order.
///
/// This is the independent cross-check for [`count_minimal_nonsimplices`];
/// it refuses instances with more than 10^7 candidate subsets.
pub fn enumerate_minimal_nonsimplices(
    p: Prime,
    n: u32,
    j: u32,
) -> Result<Vec<Vec<usize>>, ComplexError> {
    if n < 2 {
        return Err(ComplexError::CountingDimensionTooSmall { n });
    }
    if j < 1 || j > n {
        return Err(ComplexError::NonsimplexSizeOutOfRange { j, n });
    }
    let vectors = enumerate_vertices(p, n)?;
    let subsets = binomial_u128(vectors.len() as u128, u128::from(j) + 1);
    const SUBSET_LIMIT: u128 = 10_000_000;
    if subsets > SUBSET_LIMIT {
        return Err(ComplexError::EnumerationTooLarge {
            count: subsets,
            limit: SUBSET_LIMIT,
        });
    }
    let size = j as usize + 1;
    let is_independent = |combo: &[usize]| {
        let cols: Vec<FpVector> = combo.iter().map(|&i| vectors[i].clone()).collect();
        FpMatrix::from_columns(&cols)
            .expect("uniform vectors")
            .rank()
            == cols.len()
    };
    Ok((0..vectors.len())
        .combinations(size)
        .filter(|combo| {
            !is_independent(combo)
                && (0..size).all(|skip| {
                    let sub: Vec<usize> = combo
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    is_independent(&sub)
                })
        })
        .collect())
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc.saturating_mul(n - t) / (t + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(q: u32) -> Prime {
        Prime::new(q).unwrap()
    }

    #[test]
    fn descriptor_json_round_trips() {
        let cases = [
            ComplexDescriptor::skeleton(5, 2).unwrap(),
            ComplexDescriptor::universal(prime(3), 2).unwrap(),
            ComplexDescriptor::explicit(4, vec![vec![0, 1, 2], vec![2, 3]]).unwrap(),
        ];
        for d in cases {
            let json = d.to_json();
            assert_eq!(ComplexDescriptor::from_json(&json).unwrap(), d);
        }
        assert_eq!(
            ComplexDescriptor::skeleton(5, 2).unwrap().to_json(),
            r#"{"skeleton":{"m":5,"k":2}}"#
        );
    }

    #[test]
    fn descriptor_json_rejects_bad_input() {
        // 4 is not prime, so the universal descriptor must not parse.
        let err = ComplexDescriptor::from_json(r#"{"universal":{"p":4,"n":2}}"#).unwrap_err();
        assert!(matches!(err, ComplexError::Json(_)), "{err}");
        // k > m is structurally invalid.
        let err = ComplexDescriptor::from_json(r#"{"skeleton":{"m":2,"k":3}}"#).unwrap_err();
        assert_eq!(err, ComplexError::InvalidSkeleton { m: 2, k: 3 });
        // Explicit complexes must keep indices in range.
        let err = ComplexDescriptor::from_json(
            r#"{"explicit":{"vertices":2,"maximal_simplices":[[0,5]]}}"#,
        )
        .unwrap_err();
        assert_eq!(
            err,
            ComplexError::VertexOutOfRange {
                index: 5,
                vertices: 2
            }
        );
        let err = ComplexDescriptor::explicit(3, vec![vec![1, 1]]).unwrap_err();
        assert_eq!(err, ComplexError::DuplicateVertex { index: 1 });
        assert_eq!(
            ComplexDescriptor::explicit(0, vec![]).unwrap_err(),
            ComplexError::EmptyComplex
        );
        assert_eq!(
            ComplexDescriptor::universal(prime(3), 0).unwrap_err(),
            ComplexError::InvalidUniversalDimension { n: 0 }
        );
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(
            ComplexDescriptor::skeleton(5, 2).unwrap().vertex_count(),
            Ok(6)
        );
        assert_eq!(
            ComplexDescriptor::universal(prime(3), 2)
                .unwrap()
                .vertex_count(),
            Ok(8)
        );
        assert_eq!(
            ComplexDescriptor::universal(prime(2), 4)
                .unwrap()
                .vertex_count(),
            Ok(15)
        );
        assert_eq!(universal_vertex_count(prime(3), 3), Ok(26));
    }

    #[test]
    fn vertex_code_round_trip() {
        let p = prime(3);
        // Vertex 0 of X(F_3^2) is (0, 1): code 1, first coordinate most
        // significant.
        assert_eq!(universal_vertex_vector(p, 2, 0).unwrap().coords(), &[0, 1]);
        assert_eq!(universal_vertex_vector(p, 2, 3).unwrap().coords(), &[1, 1]);
        let all = enumerate_vertices(p, 2).unwrap();
        assert_eq!(all.len(), 8);
        for (i, v) in all.iter().enumerate() {
            assert_eq!(universal_vertex_index(v).unwrap(), i);
        }
        assert!(!all.iter().any(|v| v.is_zero()));
        assert_eq!(
            universal_vertex_index(&FpVector::zero(p, 2)),
            Err(ComplexError::ZeroVectorVertex)
        );
        assert!(matches!(
            universal_vertex_vector(p, 2, 8),
            Err(ComplexError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn orbit_representative_counts() {
        // (p^n − 1)/(p − 1) representatives, all with leading coordinate 1.
        let reps = enumerate_orbit_representatives(prime(3), 3).unwrap();
        assert_eq!(reps.len(), 13);
        let reps = enumerate_orbit_representatives(prime(3), 4).unwrap();
        assert_eq!(reps.len(), 40);
        let reps = enumerate_orbit_representatives(prime(2), 4).unwrap();
        assert_eq!(reps.len(), 15);
        let reps = enumerate_orbit_representatives(prime(5), 2).unwrap();
        assert_eq!(reps.len(), 6);
        for v in &reps {
            assert_eq!(v.get(v.leading_index().unwrap()), 1);
        }
        // Every nonzero vector normalizes to exactly one listed representative.
        let all = enumerate_vertices(prime(5), 2).unwrap();
        for v in &all {
            let rep = v.normalized_leading_one().unwrap();
            assert_eq!(reps.iter().filter(|r| **r == rep).count(), 1);
        }
    }

    #[test]
    fn counting_formula_frozen_values() {
        let count = |q, n, j| count_minimal_nonsimplices(prime(q), n, j).unwrap();
        // Derived by hand from the formulas and checked against the
        // brute-force enumeration below.
        assert_eq!(count(2, 2, 2), BigUint::from(1u32));
        assert_eq!(count(3, 2, 1), BigUint::from(4u32));
        assert_eq!(count(2, 3, 2), BigUint::from(7u32));
        assert_eq!(count(3, 3, 2), BigUint::from(416u32));
        assert_eq!(count(3, 3, 3), BigUint::from(3744u32));
        // p = 2 has no proportional pairs of distinct vectors.
        assert_eq!(count(2, 4, 1), BigUint::zero());
    }

    #[test]
    fn counting_domain_guards() {
        assert_eq!(
            count_minimal_nonsimplices(prime(3), 1, 1),
            Err(ComplexError::CountingDimensionTooSmall { n: 1 })
        );
        assert_eq!(
            count_minimal_nonsimplices(prime(3), 2, 0),
            Err(ComplexError::NonsimplexSizeOutOfRange { j: 0, n: 2 })
        );
        assert_eq!(
            count_minimal_nonsimplices(prime(3), 2, 3),
            Err(ComplexError::NonsimplexSizeOutOfRange { j: 3, n: 2 })
        );
    }

    #[test]
    fn brute_force_enumeration_matches_formula_small() {
        for (q, n) in [(2u32, 2u32), (2, 3), (3, 2)] {
            for j in 1..=n {
                let listed = enumerate_minimal_nonsimplices(prime(q), n, j).unwrap();
                let counted = count_minimal_nonsimplices(prime(q), n, j).unwrap();
                assert_eq!(
                    BigUint::from(listed.len()),
                    counted,
                    "p = {q}, n = {n}, j = {j}"
                );
            }
        }
        // The unique minimal nonsimplex of X(F_2^2) is the full triple
        // {e_2, e_1, e_1 + e_2}.
        assert_eq!(
            enumerate_minimal_nonsimplices(prime(2), 2, 2).unwrap(),
            vec![vec![0, 1, 2]]
        );
    }

    #[test]
    fn universal_degree_matches_brute_count() {
        assert_eq!(universal_degree(prime(3), 2).unwrap(), BigUint::from(6u32));
        let d = ComplexDescriptor::universal(prime(3), 2).unwrap();
        let edges = d.faces_of_size(2).unwrap();
        let at_vertex_0 = edges.iter().filter(|e| e.contains(&0)).count();
        assert_eq!(
            BigUint::from(at_vertex_0),
            universal_degree(prime(3), 2).unwrap()
        );
    }

    #[test]
    fn skeleton_faces_and_maximal_simplices() {
        let d = ComplexDescriptor::skeleton(3, 1).unwrap();
        let maximal = d.maximal_simplices().unwrap();
        assert_eq!(maximal.len(), 6); // all edges of the 3-simplex
        assert!(maximal.contains(&vec![0, 3]));
        assert_eq!(d.faces_of_size(2).unwrap().len(), 6);
        assert_eq!(d.faces_of_size(1).unwrap().len(), 4);
        assert_eq!(d.faces_of_size(3).unwrap().len(), 0);
        assert_eq!(d.dimension(), Ok(1));
        assert!(d.is_simplex(&[0, 2]).unwrap());
        assert!(!d.is_simplex(&[0, 1, 2]).unwrap());
        assert!(d.is_simplex(&[]).unwrap());
    }

    #[test]
    fn universal_maximal_simplices_are_bases() {
        // X(F_2^2): three vertices, any two distinct vectors independent.
        let d = ComplexDescriptor::universal(prime(2), 2).unwrap();
        assert_eq!(
            d.maximal_simplices().unwrap(),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        // X(F_2^3): (7·6·4)/3! = 28 bases.
        let d = ComplexDescriptor::universal(prime(2), 3).unwrap();
        assert_eq!(d.maximal_simplices().unwrap().len(), 28);
        // Faces of size 3 are exactly the bases; of size 2, all pairs are
        // independent over F_2: C(7,2) = 21.
        assert_eq!(d.faces_of_size(3).unwrap().len(), 28);
        assert_eq!(d.faces_of_size(2).unwrap().len(), 21);
        assert_eq!(d.faces_of_size(4).unwrap().len(), 0);
        assert_eq!(d.dimension(), Ok(2));
    }

    #[test]
    fn universal_is_simplex_checks_independence() {
        let d = ComplexDescriptor::universal(prime(2), 2).unwrap();
        // Vertices 0, 1, 2 are (0,1), (1,0), (1,1): dependent as a triple.
        assert!(d.is_simplex(&[0, 1]).unwrap());
        assert!(!d.is_simplex(&[0, 1, 2]).unwrap());
        // X(F_3^2): vertex 0 = (0,1) and vertex 1 = (0,2) are proportional.
        let d = ComplexDescriptor::universal(prime(3), 2).unwrap();
        assert!(!d.is_simplex(&[0, 1]).unwrap());
        assert!(d.is_simplex(&[0, 2]).unwrap());
        assert_eq!(
            d.is_simplex(&[0, 0]),
            Err(ComplexError::DuplicateVertex { index: 0 })
        );
    }

    #[test]
    fn explicit_complex_normalization() {
        // [1,0] duplicates [0,1]; [2] is contained in [2,3]; vertex 4 is
        // isolated and must appear as a singleton.
        let d = ComplexDescriptor::explicit(
            5,
            vec![vec![1, 0], vec![0, 1], vec![2], vec![2, 3], vec![]],
        )
        .unwrap();
        assert_eq!(
            d.maximal_simplices().unwrap(),
            vec![vec![0, 1], vec![2, 3], vec![4]]
        );
        assert_eq!(d.dimension(), Ok(1));
        assert!(d.is_simplex(&[3, 2]).unwrap());
        assert!(d.is_simplex(&[4]).unwrap());
        assert!(!d.is_simplex(&[1, 2]).unwrap());
        assert_eq!(
            d.faces_of_size(1).unwrap(),
            vec![vec![0], vec![1], vec![2], vec![3], vec![4]]
        );
        assert_eq!(d.faces_of_size(2).unwrap(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn enumeration_guard_triggers() {
        // 5^10 = 9_765_625 > 2^20.
        let err = enumerate_vertices(prime(5), 10).unwrap_err();
        assert!(matches!(err, ComplexError::EnumerationTooLarge { .. }));
        // The brute-force nonsimplex enumerator refuses huge subset spaces.
        let err = enumerate_minimal_nonsimplices(prime(5), 5, 4).unwrap_err();
        assert!(matches!(err, ComplexError::EnumerationTooLarge { .. }));
    }

    #[test]
    fn display_names() {
        assert_eq!(
            ComplexDescriptor::skeleton(5, 2).unwrap().to_string(),
            "Δ^5_(2)"
        );
        assert_eq!(
            ComplexDescriptor::universal(prime(3), 2)
                .unwrap()
                .to_string(),
            "X(F_3^2)"
        );
    }
}
