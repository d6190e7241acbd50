//! Explicit nondegenerate map constructions.
//!
//! Each builder returns a [`VertexMap`] witnessing an upper bound on the
//! least target dimension (equivalently, a lower bound on the invariant).
//! Sources are either skeleta `Δ^m_(k)` — vertices `1..m+1` in order — or
//! universal complexes `X(F_p^n)` with vertices in code order.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;

use super::bounds::{greedy_inequality_holds, solve_sp2_system};
use super::InvariantError;
use crate::complexes::{
    enumerate_orbit_representatives, enumerate_vertices, universal_vertex_index, ComplexDescriptor,
};
use crate::fplinalg::{FpVector, Prime};
use crate::search::codes::TargetSpace;
use crate::search::kernel_skeleton::SkeletonKernel;
use crate::search::{check_nondegenerate, CheckResult, VertexMap};

/// The Vandermonde witness `Δ^m_(k) → X(F_p^{k+1})` for `m ≤ p`:
/// vertex `i ≤ m` maps to `(1, i−1, (i−1)², …, (i−1)^k)` and vertex `m+1`
/// to `e_{k+1}`.
///
/// Any `k+1` of the first `m` images form a Vandermonde matrix with
/// distinct nodes `i−1 < p`, hence are independent; swapping in `e_{k+1}`
/// drops to a smaller Vandermonde block. This realizes the exact value
/// `m − k`.
pub fn vandermonde_skeleton_map(m: u32, k: u32, p: Prime) -> Result<VertexMap, InvariantError> {
    if m > p.get() {
        return Err(InvariantError::Precondition(format!(
            "the Vandermonde construction needs m ≤ p, got m = {m}, p = {p}"
        )));
    }
    if m == 0 || k > m - 1 {
        return Err(InvariantError::Precondition(format!(
            "the Vandermonde construction needs 0 ≤ k ≤ m − 1, got m = {m}, k = {k}"
        )));
    }
    let r = k + 1;
    let mut images = Vec::with_capacity(m as usize + 1);
    for i in 1..=m {
        let mut coords = Vec::with_capacity(r as usize);
        let mut power = 1u32; // (i−1)^0, also for i = 1
        for _ in 0..r {
            coords.push(power);
            power = p.mul(power, i - 1);
        }
        images.push(FpVector::new(p, coords));
    }
    images.push(FpVector::basis(p, r as usize, k as usize));
    Ok(VertexMap::new(p, r, images)?)
}

/// The greedy witness `Δ^m_(k) → X(F_p^n)`, valid whenever
/// `(p−1)·C(m,1) + ⋯ + (p−1)^k·C(m,k) < p^n − 1`.
///
/// The first `k+1` vertices take `e_1, …, e_{k+1}`; each later vertex
/// takes the first vector in lexicographic coordinate order avoiding every
/// combination of at most `k` earlier images with all coefficients
/// nonzero. The displayed inequality bounds that forbidden set strictly
/// below the number of nonzero vectors, so a candidate always remains.
pub fn greedy_skeleton_map(m: u32, k: u32, p: Prime, n: u32) -> Result<VertexMap, InvariantError> {
    if k > m {
        return Err(InvariantError::Precondition(format!(
            "skeleton parameters need k ≤ m, got m = {m}, k = {k}"
        )));
    }
    if !greedy_inequality_holds(m, k, p, n) {
        return Err(InvariantError::Precondition(format!(
            "the greedy bound (p−1)C(m,1) + ⋯ + (p−1)^k C(m,k) < p^n − 1 \
             fails for m = {m}, k = {k}, p = {p}, n = {n}"
        )));
    }
    let space = Arc::new(TargetSpace::new(p, n).map_err(InvariantError::Search)?);
    let mut kernel = SkeletonKernel::new(space.clone(), k as usize);
    let mut codes = Vec::with_capacity(m as usize + 1);
    // The bound forces p^n > p^k, so n ≥ k + 1 and the base fits.
    for s in 0..=k {
        let code = space.basis_code(s);
        debug_assert!(kernel.check(code));
        kernel.assign(code);
        codes.push(code);
    }
    for _ in (k + 1)..=m {
        let code = (1..space.size())
            .find(|&code| kernel.check(code))
            .ok_or_else(|| {
                InvariantError::Internal(
                    "greedy construction ran out of candidates despite its counting bound"
                        .to_owned(),
                )
            })?;
        kernel.assign(code);
        codes.push(code);
    }
    let images = codes.iter().map(|&c| space.vector(c)).collect();
    Ok(VertexMap::new(p, n, images)?)
}

/// The elementary witness `Δ^m_(k) → X(F_p^m)` for `k ≤ m−1`: vertex
/// `i ≤ m` maps to `e_i` and vertex `m+1` to `(1, 1, …, 1)`.
///
/// Any `k+1 ≤ m` images are independent: basis subsets trivially, and a
/// subset containing the all-ones vector uses at most `m−1` basis vectors,
/// so some coordinate seen only by the all-ones vector kills its
/// coefficient. This realizes the value-1 upper bound `r ≤ m`.
pub fn all_ones_skeleton_map(m: u32, k: u32, p: Prime) -> Result<VertexMap, InvariantError> {
    if m == 0 || k > m - 1 {
        return Err(InvariantError::Precondition(format!(
            "the all-ones construction needs 0 ≤ k ≤ m − 1, got m = {m}, k = {k}"
        )));
    }
    let r = m as usize;
    let mut images: Vec<FpVector> = (0..r).map(|i| FpVector::basis(p, r, i)).collect();
    images.push(FpVector::new(p, vec![1; r]));
    Ok(VertexMap::new(p, m, images)?)
}

/// The two-extra-vertex witness `Δ^m_(k) → X(F_p^{m−1})`, available
/// exactly when [`solve_sp2_system`] returns a certificate; it realizes
/// the value-2 lower bound `r ≤ m − 1`.
///
/// Vertices `1..m−1` take `e_1, …, e_{m−1}`. With the certificate's block
/// sizes `(x1, x11, x2)` laid out left to right, vertex `m` is 1 on the
/// first two blocks, and vertex `m+1` cycles the nonzero residues
/// `1, 2, …, p−1` along the shared `x11` block and is 1 on the last block.
///
/// Independence of any `k+1` images: each extra image has support of size
/// at least `k+1` (the first two constraints), so it cannot be a
/// combination of `≤ k` basis vectors; and for a subset containing both
/// extra images with `≤ k−1` basis vectors, at least
/// `x1+x11+x2 − (k−1) ≥ multiplicity + 1` support columns are uncovered —
/// if one lies in an exclusive block it kills that extra image directly,
/// and otherwise two uncovered shared columns carry distinct residues
/// (the round-robin caps any residue's multiplicity), killing both.
pub fn sp2_witness_map(m: u32, k: u32, p: Prime) -> Result<VertexMap, InvariantError> {
    let Some(certificate) = solve_sp2_system(m, k, p) else {
        return Err(InvariantError::Precondition(format!(
            "no two-extra-vertex certificate exists for m = {m}, k = {k}, p = {p}"
        )));
    };
    let r = (m - 1) as usize;
    let q = p.get();
    let x1 = certificate.x1 as usize;
    let x11 = certificate.x11 as usize;
    let x2 = certificate.x2 as usize;
    let mut images: Vec<FpVector> = (0..r).map(|i| FpVector::basis(p, r, i)).collect();
    let mut before = vec![0u32; r];
    for c in before.iter_mut().take(x1 + x11) {
        *c = 1;
    }
    images.push(FpVector::new(p, before));
    let mut after = vec![0u32; r];
    for j in 0..x11 {
        after[x1 + j] = (j as u32 % (q - 1)) + 1;
    }
    for c in after.iter_mut().skip(x1 + x11).take(x2) {
        *c = 1;
    }
    images.push(FpVector::new(p, after));
    Ok(VertexMap::new(p, m - 1, images)?)
}

/// The identity witness `X(F_p^n) → X(F_p^n)`: every vertex maps to its
/// own vector. Trivially nondegenerate, and minimal because no target of
/// dimension below `n` fits an `n`-vertex simplex; it realizes
/// `s_p(X(F_p^n)) = p^n − 1 − n`.
pub fn identity_universal_map(p: Prime, n: u32) -> Result<VertexMap, InvariantError> {
    let vertices = enumerate_vertices(p, n)?;
    Ok(VertexMap::new(p, n, vertices)?)
}

/// The 15-vertex witness `X(F_2^4) → X(F_3^5)`: a vertex `v` maps to its
/// own 0/1 coordinates (read mod 3) with a fifth coordinate of 1 when `v`
/// has support size 3 and 0 otherwise.
///
/// The extra coordinate repairs exactly the simplices whose 0/1 lift
/// degenerates mod 3 (quadruples like the all-but-diagonal matrix, with
/// determinant ±3); it realizes `s_3(X(F_2^4)) ≥ 10`.
pub fn build_f24_to_f35_map() -> VertexMap {
    let p2 = Prime::new(2).expect("2 is prime");
    let p3 = Prime::new(3).expect("3 is prime");
    let images = enumerate_vertices(p2, 4)
        .expect("the 15 source vertices enumerate")
        .into_iter()
        .map(|v| {
            let mut coords: Vec<u32> = v.coords().to_vec();
            coords.push(u32::from(v.support().len() == 3));
            FpVector::new(p3, coords)
        })
        .collect();
    VertexMap::new(p3, 5, images).expect("every image is a nonzero vector of length 5")
}

/// The 26-vertex witness `X(F_3^3) → X(F_2^5)`, realizing
/// `s_2(X(F_3^3)) ≥ 21`.
///
/// Scalar classes `{v, 2v}` are never joined by a simplex (they are
/// dependent), so the 13 classes may take 13 distinct images: the five
/// standard basis vectors of `F_2^5` plus the first eight weight-3
/// vectors in code order. Any three of those images are independent over
/// `F_2`: two weight-3 vectors sum to an even-weight vector (never
/// weight 3, never a basis vector), and a basis vector plus a weight-3
/// vector sum to weight 2 or 4 (never either kind). Simplices here have
/// at most three vertices, so pairwise-distinct images suffice.
pub fn build_f33_to_f25_map() -> VertexMap {
    let p3 = Prime::new(3).expect("3 is prime");
    let p2 = Prime::new(2).expect("2 is prime");
    let representatives = enumerate_orbit_representatives(p3, 3).expect("13 orbits enumerate");
    let mut class_images: Vec<FpVector> = (0..5).map(|i| FpVector::basis(p2, 5, i)).collect();
    let mut code = 0u32;
    while class_images.len() < representatives.len() {
        code += 1;
        if code.count_ones() == 3 {
            let coords = (0..5).map(|t| (code >> (4 - t)) & 1).collect();
            class_images.push(FpVector::new(p2, coords));
        }
    }
    let class_of: BTreeMap<usize, usize> = representatives
        .iter()
        .enumerate()
        .map(|(position, rep)| {
            let index = universal_vertex_index(rep).expect("representatives are vertices");
            (index, position)
        })
        .collect();
    let images = enumerate_vertices(p3, 3)
        .expect("the 26 source vertices enumerate")
        .iter()
        .map(|v| {
            let rep = v
                .normalized_leading_one()
                .expect("universal vertices are nonzero");
            let index = universal_vertex_index(&rep).expect("representatives are vertices");
            class_images[class_of[&index]].clone()
        })
        .collect();
    VertexMap::new(p2, 5, images).expect("every image is a nonzero vector of length 5")
}

/// Whether `q` clears the Hadamard threshold at target dimension `r`:
/// `q² · 4^r > (r+1)^{r+1}`, i.e. `q` strictly exceeds the maximal
/// absolute determinant bound `(r+1)^{(r+1)/2} / 2^r` for 0/1 matrices of
/// size at most `r` (squaring removes the half power; comparison is exact
/// big-integer arithmetic).
fn hadamard_clears(q: Prime, r: u32) -> bool {
    BigUint::from(q.get()).pow(2) * BigUint::from(4u32).pow(r) > BigUint::from(r + 1).pow(r + 1)
}

/// Reinterprets a nondegenerate 0/1 map over `F_2` as a map over `F_q`,
/// coordinate table unchanged.
///
/// A set of 0/1 columns independent over `F_2` has some square minor with
/// odd integer determinant; that determinant survives mod `q` whenever
/// the source has dimension at most 2 (minors of size ≤ 3 have absolute
/// determinant ≤ 2 < q) or `q` exceeds the Hadamard bound for the map's
/// target dimension. In those cases the lift is returned as guaranteed;
/// otherwise it is re-verified explicitly and a degenerate lift is
/// reported with the violating simplex.
pub fn lift_mod_p(
    source: &ComplexDescriptor,
    map: &VertexMap,
    q: Prime,
) -> Result<VertexMap, InvariantError> {
    if map.prime().get() != 2 {
        return Err(InvariantError::Precondition(format!(
            "lifting needs a 0/1 map over F_2, got one over F_{}",
            map.prime()
        )));
    }
    if let CheckResult::Degenerate { simplex } = check_nondegenerate(source, map)? {
        return Err(InvariantError::Precondition(format!(
            "the map to lift is already degenerate over F_2 on simplex {simplex:?}"
        )));
    }
    let images = map
        .images()
        .iter()
        .map(|v| FpVector::new(q, v.coords().to_vec()))
        .collect();
    let lifted = VertexMap::new(q, map.r(), images)?;
    if source.dimension()? <= 2 || hadamard_clears(q, map.r()) {
        debug_assert!(matches!(
            check_nondegenerate(source, &lifted),
            Ok(CheckResult::Nondegenerate)
        ));
        return Ok(lifted);
    }
    match check_nondegenerate(source, &lifted)? {
        CheckResult::Nondegenerate => Ok(lifted),
        CheckResult::Degenerate { simplex } => Err(InvariantError::LiftDegenerate { simplex }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fplinalg::linearly_independent;

    fn prime(q: u32) -> Prime {
        Prime::new(q).unwrap()
    }

    fn assert_nondegenerate(source: &ComplexDescriptor, map: &VertexMap) {
        assert_eq!(
            check_nondegenerate(source, map).unwrap(),
            CheckResult::Nondegenerate
        );
    }

    fn coords(map: &VertexMap) -> Vec<Vec<u32>> {
        map.images().iter().map(|v| v.coords().to_vec()).collect()
    }

    #[test]
    fn vandermonde_reference_residues() {
        let map = vandermonde_skeleton_map(5, 2, prime(5)).unwrap();
        assert_eq!(
            coords(&map),
            vec![
                vec![1, 0, 0],
                vec![1, 1, 1],
                vec![1, 2, 4],
                vec![1, 3, 4],
                vec![1, 4, 1],
                vec![0, 0, 1],
            ]
        );
        let map = vandermonde_skeleton_map(2, 1, prime(2)).unwrap();
        assert_eq!(coords(&map), vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn vandermonde_grid_is_nondegenerate() {
        for q in [2u32, 3, 5, 7] {
            for m in 1..=q {
                for k in 0..m {
                    let map = vandermonde_skeleton_map(m, k, prime(q)).unwrap();
                    assert_eq!(map.r(), k + 1);
                    let source = ComplexDescriptor::skeleton(m, k).unwrap();
                    assert_nondegenerate(&source, &map);
                }
            }
        }
    }

    #[test]
    fn vandermonde_rejects_bad_parameters() {
        assert!(matches!(
            vandermonde_skeleton_map(6, 1, prime(5)),
            Err(InvariantError::Precondition(_))
        ));
        assert!(matches!(
            vandermonde_skeleton_map(3, 3, prime(5)),
            Err(InvariantError::Precondition(_))
        ));
    }

    #[test]
    fn greedy_reference_run() {
        // m=4, k=1, p=2, n=3: base e_1, e_2, then lexicographically first
        // codes avoiding earlier images: e_3, (0,1,1), (1,0,1).
        let map = greedy_skeleton_map(4, 1, prime(2), 3).unwrap();
        assert_eq!(
            coords(&map),
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![0, 1, 1],
                vec![1, 0, 1],
            ]
        );
    }

    #[test]
    fn greedy_full_simplex_is_identity_like() {
        let map = greedy_skeleton_map(3, 3, prime(2), 4).unwrap();
        let expected: Vec<Vec<u32>> = (0..4)
            .map(|i| FpVector::basis(prime(2), 4, i).coords().to_vec())
            .collect();
        assert_eq!(coords(&map), expected);
    }

    #[test]
    fn greedy_rejects_violated_inequality() {
        // (p−1)·C(4,1) = 4 is not < 2^2 − 1 = 3.
        assert!(matches!(
            greedy_skeleton_map(4, 1, prime(2), 2),
            Err(InvariantError::Precondition(_))
        ));
    }

    #[test]
    fn greedy_grid_is_nondegenerate() {
        use super::super::bounds::log_dimension;
        for q in [2u32, 3] {
            let p = prime(q);
            for m in 1..=6u32 {
                for k in 0..=m {
                    let n = log_dimension(m, k, p);
                    let map = greedy_skeleton_map(m, k, p, n).unwrap();
                    let source = ComplexDescriptor::skeleton(m, k).unwrap();
                    assert_nondegenerate(&source, &map);
                }
            }
        }
    }

    #[test]
    fn all_ones_grid_is_nondegenerate() {
        for q in [2u32, 3, 5] {
            for m in 1..=7u32 {
                for k in 0..m {
                    let map = all_ones_skeleton_map(m, k, prime(q)).unwrap();
                    assert_eq!(map.r(), m);
                    let source = ComplexDescriptor::skeleton(m, k).unwrap();
                    assert_nondegenerate(&source, &map);
                }
            }
        }
    }

    #[test]
    fn sp2_witness_reference_images() {
        let map = sp2_witness_map(6, 3, prime(3)).unwrap();
        assert_eq!(map.r(), 5);
        assert_eq!(map.image(5).coords(), &[1, 1, 1, 1, 0]);
        assert_eq!(map.image(6).coords(), &[0, 1, 2, 1, 1]);
    }

    #[test]
    fn sp2_witness_grid_is_nondegenerate() {
        for q in [2u32, 3, 5] {
            let p = prime(q);
            for m in 2..=10u32 {
                for k in 0..=m {
                    match sp2_witness_map(m, k, p) {
                        Ok(map) => {
                            assert_eq!(map.r(), m - 1);
                            let source = ComplexDescriptor::skeleton(m, k).unwrap();
                            assert_nondegenerate(&source, &map);
                        }
                        Err(InvariantError::Precondition(_)) => {
                            assert!(solve_sp2_system(m, k, p).is_none());
                        }
                        Err(other) => panic!("unexpected error: {other}"),
                    }
                }
            }
        }
    }

    #[test]
    fn identity_universal_is_nondegenerate() {
        for (q, n) in [(2u32, 2u32), (2, 3), (2, 4), (3, 2), (3, 3)] {
            let p = prime(q);
            let map = identity_universal_map(p, n).unwrap();
            assert_eq!(map.len(), (q.pow(n) - 1) as usize);
            let source = ComplexDescriptor::universal(p, n).unwrap();
            assert_nondegenerate(&source, &map);
        }
    }

    #[test]
    fn f24_to_f35_reference_images() {
        let map = build_f24_to_f35_map();
        assert_eq!(map.len(), 15);
        // e_1 has code 8, hence index 7; support 1 keeps the zero flag.
        assert_eq!(map.image(7).coords(), &[1, 0, 0, 0, 0]);
        // (1,1,1,0) has code 14, hence index 13; support 3 sets the flag.
        assert_eq!(map.image(13).coords(), &[1, 1, 1, 0, 1]);
        let source = ComplexDescriptor::universal(prime(2), 4).unwrap();
        assert_nondegenerate(&source, &map);
    }

    #[test]
    fn f33_to_f25_is_nondegenerate_and_class_constant() {
        let map = build_f33_to_f25_map();
        assert_eq!(map.len(), 26);
        let p3 = prime(3);
        for v in enumerate_vertices(p3, 3).unwrap() {
            let double = v.scaled(2);
            let i = universal_vertex_index(&v).unwrap();
            let j = universal_vertex_index(&double).unwrap();
            assert_eq!(map.image(i), map.image(j), "classes share images");
        }
        // Thirteen distinct images across the thirteen classes, any three
        // of which are independent.
        let mut distinct: Vec<&FpVector> = map.images().iter().collect();
        distinct.sort_by_key(|v| v.coords().to_vec());
        distinct.dedup_by_key(|v| v.coords().to_vec());
        assert_eq!(distinct.len(), 13);
        for a in 0..distinct.len() {
            for b in (a + 1)..distinct.len() {
                for c in (b + 1)..distinct.len() {
                    let triple = [
                        distinct[a].clone(),
                        distinct[b].clone(),
                        distinct[c].clone(),
                    ];
                    assert!(linearly_independent(&triple).unwrap());
                }
            }
        }
        let source = ComplexDescriptor::universal(p3, 3).unwrap();
        assert_nondegenerate(&source, &map);
    }

    #[test]
    fn lift_guaranteed_cases_pass() {
        // Dimension ≤ 2 guarantee, far below the Hadamard threshold.
        let source = ComplexDescriptor::skeleton(2, 1).unwrap();
        let map = vandermonde_skeleton_map(2, 1, prime(2)).unwrap();
        let lifted = lift_mod_p(&source, &map, prime(7)).unwrap();
        assert_eq!(lifted.prime().get(), 7);
        assert_nondegenerate(&source, &lifted);
        // Hadamard guarantee at r = 4, q = 5: 25·256 > 5^5.
        let universal = ComplexDescriptor::universal(prime(2), 4).unwrap();
        let identity = identity_universal_map(prime(2), 4).unwrap();
        for q in [5u32, 7] {
            let lifted = lift_mod_p(&universal, &identity, prime(q)).unwrap();
            assert_nondegenerate(&universal, &lifted);
        }
    }

    #[test]
    fn lift_detects_degenerate_quadruple() {
        // The four 0/1 vectors with exactly one zero each (the all-ones
        // matrix minus the identity) have determinant −3: independent over
        // F_2, dependent mod 3.
        let p2 = prime(2);
        let rows = [
            vec![0u32, 1, 1, 1],
            vec![1, 0, 1, 1],
            vec![1, 1, 0, 1],
            vec![1, 1, 1, 0],
        ];
        let images: Vec<FpVector> = rows.iter().map(|r| FpVector::new(p2, r.clone())).collect();
        let map = VertexMap::new(p2, 4, images).unwrap();
        let source = ComplexDescriptor::explicit(4, vec![vec![0, 1, 2, 3]]).unwrap();
        match lift_mod_p(&source, &map, prime(3)) {
            Err(InvariantError::LiftDegenerate { simplex }) => {
                assert_eq!(simplex, vec![0, 1, 2, 3]);
            }
            other => panic!("expected a degenerate lift, got {other:?}"),
        }
        // The same table clears the threshold at q = 5 (determinant −3 ≢ 0).
        assert!(lift_mod_p(&source, &map, prime(5)).is_ok());
    }

    #[test]
    fn lift_of_full_universal_identity_mod_3_fails_honestly() {
        // Identity on X(F_2^4) lifted mod 3 must hit a dependent quadruple;
        // the reported simplex must genuinely degenerate mod 3.
        let universal = ComplexDescriptor::universal(prime(2), 4).unwrap();
        let identity = identity_universal_map(prime(2), 4).unwrap();
        match lift_mod_p(&universal, &identity, prime(3)) {
            Err(InvariantError::LiftDegenerate { simplex }) => {
                let p3 = prime(3);
                let lifted: Vec<FpVector> = simplex
                    .iter()
                    .map(|&i| FpVector::new(p3, identity.image(i).coords().to_vec()))
                    .collect();
                assert!(!linearly_independent(&lifted).unwrap());
            }
            other => panic!("expected a degenerate lift, got {other:?}"),
        }
    }

    #[test]
    fn lift_rejects_bad_inputs() {
        // Wrong source field.
        let source = ComplexDescriptor::skeleton(3, 1).unwrap();
        let map = vandermonde_skeleton_map(3, 1, prime(3)).unwrap();
        assert!(matches!(
            lift_mod_p(&source, &map, prime(5)),
            Err(InvariantError::Precondition(_))
        ));
        // Degenerate input map: both endpoints of an edge share an image.
        let p2 = prime(2);
        let images = vec![FpVector::new(p2, vec![1, 0]), FpVector::new(p2, vec![1, 0])];
        let map = VertexMap::new(p2, 2, images).unwrap();
        let edge = ComplexDescriptor::skeleton(1, 1).unwrap();
        assert!(matches!(
            lift_mod_p(&edge, &map, prime(5)),
            Err(InvariantError::Precondition(_))
        ));
    }
}
