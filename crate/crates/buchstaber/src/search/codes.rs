//! Integer-coded vectors of `F_p^r` and fast arithmetic on them.
//!
//! A vector `(c_1, …, c_r)` is stored as the radix-`p` code
//! `Σ c_t · p^{r−t}` with the first coordinate most significant, so the
//! integer order on codes is the lexicographic order on coordinate tuples.
//! The search kernels only ever add vectors and scale them, so those two
//! operations get the fast paths: XOR for `p = 2`, lookup tables when the
//! space is small enough, and digit arithmetic otherwise.

use crate::fplinalg::{FpVector, Prime};

use super::SearchError;

/// Hard cap on `p^r` for building a [`TargetSpace`]: codes stay well inside
/// `u32` and a bitset over the space stays within a few megabytes.
pub(crate) const MAX_TARGET_SIZE: u64 = 1 << 26;

/// Build the full `size × size` addition table only below this size
/// (3200² u16 entries ≈ 20 MB).
const ADD_TABLE_MAX_SIZE: u64 = 3200;

/// Build the `p × size` scaling table only below this size.
const SCALE_TABLE_MAX_SIZE: u64 = 1 << 20;

/// Arithmetic context for the target vector space `F_p^r`.
#[derive(Debug)]
pub(crate) struct TargetSpace {
    prime: Prime,
    p: u32,
    r: u32,
    size: u32,
    /// `powers[i] = p^i` for `i = 0 ..= r`.
    powers: Vec<u32>,
    add_table: Option<Vec<u16>>,
    scale_table: Option<Vec<u32>>,
}

impl TargetSpace {
    pub fn new(prime: Prime, r: u32) -> Result<Self, SearchError> {
        let p = prime.get();
        let mut size_u64: u64 = 1;
        for _ in 0..r {
            size_u64 = size_u64.saturating_mul(u64::from(p));
            if size_u64 > MAX_TARGET_SIZE {
                return Err(SearchError::TargetTooLarge {
                    p,
                    r,
                    size: size_u64,
                    limit: MAX_TARGET_SIZE,
                });
            }
        }
        let size = size_u64 as u32;
        let powers: Vec<u32> = (0..=r)
            .scan(1u32, |acc, _| {
                let value = *acc;
                *acc = acc.saturating_mul(p);
                Some(value)
            })
            .collect();
        let mut space = TargetSpace {
            prime,
            p,
            r,
            size,
            powers,
            add_table: None,
            scale_table: None,
        };
        if p != 2 {
            if size_u64 <= ADD_TABLE_MAX_SIZE {
                let n = size as usize;
                let mut table = vec![0u16; n * n];
                for a in 0..size {
                    for b in 0..=a {
                        let sum = space.add_digitwise(a, b) as u16;
                        table[a as usize * n + b as usize] = sum;
                        table[b as usize * n + a as usize] = sum;
                    }
                }
                space.add_table = Some(table);
            }
            if size_u64 <= SCALE_TABLE_MAX_SIZE {
                let n = size as usize;
                let mut table = vec![0u32; p as usize * n];
                for c in 1..p {
                    for a in 0..size {
                        table[c as usize * n + a as usize] = space.scale_digitwise(c, a);
                    }
                }
                space.scale_table = Some(table);
            }
        }
        Ok(space)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `p^r`, the number of codes including zero.
    pub fn size(&self) -> u32 {
        self.size
    }

    fn add_digitwise(&self, mut a: u32, mut b: u32) -> u32 {
        let mut result = 0;
        let mut place = 1;
        while a != 0 || b != 0 {
            result += ((a + b) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        result
    }

    fn scale_digitwise(&self, c: u32, mut a: u32) -> u32 {
        let mut result = 0;
        let mut place = 1;
        while a != 0 {
            result += ((a % self.p) * c % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        result
    }

    /// Coordinate-wise sum of two codes.
    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if let Some(table) = &self.add_table {
            return u32::from(table[a as usize * self.size as usize + b as usize]);
        }
        self.add_digitwise(a, b)
    }

    /// The code scaled by the residue `c` (`0 ≤ c < p`).
    #[inline]
    pub fn scale(&self, c: u32, a: u32) -> u32 {
        if self.p == 2 {
            return if c == 0 { 0 } else { a };
        }
        if c == 0 {
            return 0;
        }
        if let Some(table) = &self.scale_table {
            return table[c as usize * self.size as usize + a as usize];
        }
        self.scale_digitwise(c, a)
    }

    /// Code of the standard basis vector `e_{s+1}` (0-based `s`): a single
    /// 1 in coordinate `s`, i.e. `p^{r−1−s}`.
    pub fn basis_code(&self, s: u32) -> u32 {
        debug_assert!(s < self.r);
        self.powers[(self.r - 1 - s) as usize]
    }

    /// Whether the most significant nonzero digit of `code` is 1, i.e.
    /// whether the vector is the leading-one representative of its scalar
    /// orbit.
    pub fn is_leading_one(&self, code: u32) -> bool {
        if code == 0 {
            return false;
        }
        let top = self
            .powers
            .iter()
            .rposition(|&pw| pw <= code)
            .expect("code is nonzero, so p^0 <= code");
        code / self.powers[top] == 1
    }

    /// Candidate image codes per greedily-used dimension `s = 0 ..= r`,
    /// sorted ascending.
    ///
    /// With scalar-orbit restriction and basis-prefix pinning, a vertex
    /// assigned while `s` basis vectors are in use may take either the next
    /// basis vector `e_{s+1}` (dimension expansion — always the smallest
    /// code in the list, so depth-first search tries it first) or a
    /// leading-one representative supported on the first `s` coordinates.
    /// At `s = r` there is no expansion and all leading-one codes remain.
    pub fn pinned_candidates(&self) -> Vec<Vec<u32>> {
        (0..=self.r)
            .map(|s| {
                let mut list = Vec::new();
                if s < self.r {
                    list.push(self.basis_code(s));
                }
                // Codes supported on the first s coordinates are exactly
                // the nonzero multiples of p^{r−s}.
                let step = self.powers[(self.r - s) as usize];
                let mut code = step;
                while code < self.size {
                    if self.is_leading_one(code) {
                        list.push(code);
                    }
                    code += step;
                }
                debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
                list
            })
            .collect()
    }

    /// All nonzero codes, ascending: the candidate list when symmetry
    /// reduction is disabled.
    pub fn all_candidates(&self) -> Vec<u32> {
        (1..self.size).collect()
    }

    /// Decodes a code into its coordinate vector.
    pub fn vector(&self, code: u32) -> FpVector {
        let mut coords = vec![0u32; self.r as usize];
        let mut c = code;
        for t in (0..self.r as usize).rev() {
            coords[t] = c % self.p;
            c /= self.p;
        }
        FpVector::new(self.prime, coords)
    }

    /// Encodes a coordinate vector of length `r` into its code.
    #[cfg(test)]
    pub fn code(&self, v: &FpVector) -> u32 {
        debug_assert_eq!(v.len(), self.r as usize);
        v.coords().iter().fold(0, |acc, &c| acc * self.p + c)
    }
}

/// Minimal bitset helpers over `&[u64]` word slices, used by the kernels
/// for membership tests over code space.
pub(crate) mod bits {
    #[inline]
    pub fn test(words: &[u64], i: u32) -> bool {
        words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(words: &mut [u64], i: u32) {
        words[(i >> 6) as usize] |= 1 << (i & 63);
    }

    #[inline]
    pub fn clear(words: &mut [u64], i: u32) {
        words[(i >> 6) as usize] &= !(1 << (i & 63));
    }

    pub fn words_for(size: u32) -> usize {
        (size as usize).div_ceil(64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::universal_vertex_vector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn space(p: u32, r: u32) -> TargetSpace {
        TargetSpace::new(Prime::new(p).unwrap(), r).unwrap()
    }

    #[test]
    fn add_and_scale_match_vector_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE5);
        // (5, 6) exceeds the add-table threshold, exercising the digitwise
        // path; the others use tables (or XOR for p = 2).
        for (p, r) in [(2u32, 4u32), (3, 3), (5, 3), (5, 6), (7, 2)] {
            let s = space(p, r);
            for _ in 0..200 {
                let a = rng.gen_range(0..s.size());
                let b = rng.gen_range(0..s.size());
                let c = rng.gen_range(0..p);
                let va = s.vector(a);
                let vb = s.vector(b);
                assert_eq!(s.vector(s.add(a, b)), va.add(&vb).unwrap(), "p={p} r={r}");
                assert_eq!(s.vector(s.scale(c, a)), va.scaled(c), "p={p} r={r}");
                assert_eq!(s.code(&va), a);
            }
        }
    }

    #[test]
    fn codes_agree_with_universal_vertex_numbering() {
        let s = space(3, 3);
        let p = Prime::new(3).unwrap();
        for index in 0..26 {
            let v = universal_vertex_vector(p, 3, index).unwrap();
            assert_eq!(s.code(&v), index as u32 + 1);
            assert_eq!(s.vector(index as u32 + 1), v);
        }
    }

    #[test]
    fn basis_codes_are_powers() {
        let s = space(3, 3);
        assert_eq!(s.basis_code(0), 9); // e_1 = (1,0,0)
        assert_eq!(s.basis_code(1), 3); // e_2 = (0,1,0)
        assert_eq!(s.basis_code(2), 1); // e_3 = (0,0,1)
        assert_eq!(s.vector(9).coords(), &[1, 0, 0]);
    }

    #[test]
    fn leading_one_detection() {
        let s = space(3, 3);
        let reps: Vec<u32> = (1..s.size()).filter(|&c| s.is_leading_one(c)).collect();
        // (3^3 − 1)/(3 − 1) = 13 scalar orbits.
        assert_eq!(reps.len(), 13);
        assert!(s.is_leading_one(1)); // (0,0,1)
        assert!(!s.is_leading_one(2)); // (0,0,2)
        assert!(s.is_leading_one(12)); // (1,1,0)
        assert!(!s.is_leading_one(18)); // (2,0,0)
    }

    #[test]
    fn pinned_candidate_lists_frozen_for_f27() {
        let s = space(3, 3);
        let lists = s.pinned_candidates();
        assert_eq!(lists.len(), 4);
        // No basis vector used yet: only the expansion e_1.
        assert_eq!(lists[0], vec![9]);
        // One used: e_2, or the span of e_1 (leading-one: just e_1 itself).
        assert_eq!(lists[1], vec![3, 9]);
        // Two used: e_3, or leading-one codes supported on coordinates 1–2
        // (multiples of 3 whose top digit is 1).
        assert_eq!(lists[2], vec![1, 3, 9, 12, 15]);
        // All three used: every leading-one code.
        assert_eq!(lists[3].len(), 13);
        assert_eq!(lists[3][0], 1);
    }

    #[test]
    fn pinned_lists_for_p2_have_no_orbit_loss() {
        // Over F_2 every orbit is a single vector, so the s = r list is
        // all nonzero codes.
        let s = space(2, 3);
        let lists = s.pinned_candidates();
        assert_eq!(lists[3], vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(lists[0], vec![4]);
        assert_eq!(lists[1], vec![2, 4]);
        // e_3 plus the span of e_1, e_2 (even codes).
        assert_eq!(lists[2], vec![1, 2, 4, 6]);
    }

    #[test]
    fn target_size_guard() {
        let err = TargetSpace::new(Prime::new(7).unwrap(), 12).unwrap_err();
        assert!(matches!(err, SearchError::TargetTooLarge { .. }));
    }

    #[test]
    fn bitset_helpers() {
        let mut words = vec![0u64; bits::words_for(130)];
        assert_eq!(words.len(), 3);
        bits::set(&mut words, 129);
        bits::set(&mut words, 0);
        assert!(bits::test(&words, 129));
        assert!(bits::test(&words, 0));
        assert!(!bits::test(&words, 64));
        bits::clear(&mut words, 129);
        assert!(!bits::test(&words, 129));
    }
}
