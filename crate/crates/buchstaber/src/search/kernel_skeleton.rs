//! Search kernel for skeleton sources `Δ^m_(k)`.
//!
//! A map from the `k`-skeleton is nondegenerate exactly when every
//! `(k+1)`-subset of the image vectors is linearly independent. Checking
//! incrementally, a new image `x` is admissible iff it avoids the span of
//! every `≤ k`-subset of the already assigned images; that union of spans
//! is the set of combinations of at most `k` assigned images with all
//! coefficients nonzero (plus zero). The kernel maintains these
//! combinations in strata by the exact number of images used, each stratum
//! a code list plus a membership bitset over the target space, so the
//! admissibility check is `k` bit tests.
//!
//! One direction suffices: if some `(k+1)`-subset of images were dependent,
//! a minimal dependent subset has all coefficients nonzero, so its
//! last-assigned member lay in the span of at most `k` earlier images and
//! would have been rejected.

use std::sync::Arc;

use super::codes::{bits, TargetSpace};

#[derive(Debug, Clone)]
pub(crate) struct SkeletonKernel {
    space: Arc<TargetSpace>,
    /// Number of strata: stratum `t` holds combinations of exactly `t + 1`
    /// assigned images with all coefficients nonzero.
    k: usize,
    /// Stratum element lists. An element appears in the list of the
    /// assignment that first produced it, so backtracking in LIFO order can
    /// undo by truncation.
    strata_elems: Vec<Vec<u32>>,
    /// Stratum membership bitsets, parallel to `strata_elems`.
    strata_bits: Vec<Vec<u64>>,
    /// Stack of stratum lengths saved before each assignment (`k` entries
    /// per assignment).
    saved_lens: Vec<usize>,
    assigned: usize,
}

impl SkeletonKernel {
    pub fn new(space: Arc<TargetSpace>, k: usize) -> Self {
        let words = bits::words_for(space.size());
        SkeletonKernel {
            space,
            k,
            strata_elems: vec![Vec::new(); k],
            strata_bits: vec![vec![0u64; words]; k],
            saved_lens: Vec::new(),
            assigned: 0,
        }
    }

    /// Whether `code` may be assigned next: it must not be a combination of
    /// at most `k` already assigned images with all coefficients nonzero.
    /// (The caller's candidate lists exclude zero.)
    pub fn check(&self, code: u32) -> bool {
        self.strata_bits
            .iter()
            .all(|stratum| !bits::test(stratum, code))
    }

    pub fn assign(&mut self, code: u32) {
        for t in 0..self.k {
            self.saved_lens.push(self.strata_elems[t].len());
        }
        let p = self.space.p();
        // Descending stratum order: stratum t reads stratum t − 1 before it
        // gains this assignment's combinations, so every new combination
        // uses the new image exactly once.
        for t in (1..self.k).rev() {
            let (lower, upper) = self.strata_elems.split_at_mut(t);
            let parent = &lower[t - 1];
            let elems = &mut upper[0];
            let bitset = &mut self.strata_bits[t];
            for c in 1..p {
                let cx = self.space.scale(c, code);
                for &w in parent.iter() {
                    let y = self.space.add(w, cx);
                    if !bits::test(bitset, y) {
                        bits::set(bitset, y);
                        elems.push(y);
                    }
                }
            }
        }
        if self.k > 0 {
            let bitset = &mut self.strata_bits[0];
            let elems = &mut self.strata_elems[0];
            for c in 1..p {
                let y = self.space.scale(c, code);
                if !bits::test(bitset, y) {
                    bits::set(bitset, y);
                    elems.push(y);
                }
            }
        }
        self.assigned += 1;
    }

    pub fn unassign(&mut self) {
        debug_assert!(self.assigned > 0);
        self.assigned -= 1;
        let base = self.saved_lens.len() - self.k;
        for t in 0..self.k {
            let keep = self.saved_lens[base + t];
            let elems = &mut self.strata_elems[t];
            let bitset = &mut self.strata_bits[t];
            for &y in &elems[keep..] {
                bits::clear(bitset, y);
            }
            elems.truncate(keep);
        }
        self.saved_lens.truncate(base);
    }
}
