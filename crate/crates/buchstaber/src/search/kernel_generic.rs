//! Search kernel for arbitrary sources (universal and explicit complexes).
//!
//! Positions are the source vertices in a fixed assignment order. For the
//! nondegeneracy of a partial map it is enough that, whenever a vertex `t`
//! is assigned the image `x`, the image stays outside the span of the
//! images of every already-assigned face `T` with `T ∪ {t}` a source
//! simplex — and among those only the inclusion-maximal `T` need testing,
//! since spans grow monotonically with the face.
//!
//! The kernel therefore keeps one *slot* per source face of size at most
//! `dim` (the faces that can occur as such a `T`), holding the span of the
//! face's current images as an element list plus a membership bitset. A
//! slot is recomputed exactly when its last position (in assignment order)
//! is assigned, by expanding its parent slot (the face minus that last
//! position) with the new image. Slots whose last position lies beyond the
//! current search depth hold stale data, but no constraint ever reads them:
//! a constraint at position `t` only references faces contained in the
//! assigned prefix before `t`. Backtracking therefore needs no undo work.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complexes::ComplexDescriptor;

use super::codes::{bits, TargetSpace};
use super::SearchError;

const NO_PARENT: usize = usize::MAX;

#[derive(Debug, Clone)]
pub(crate) struct GenericKernel {
    space: Arc<TargetSpace>,
    /// Bitset words per slot.
    words: usize,
    /// Slot → parent slot (the face minus its last position), or
    /// [`NO_PARENT`] for singletons.
    parents: Vec<usize>,
    /// Current span elements of each slot (always including 0).
    slot_elems: Vec<Vec<u32>>,
    /// Flat bitset arena, `words` words per slot.
    slot_bits: Vec<u64>,
    /// Position → slots whose last position this is.
    update_lists: Vec<Vec<usize>>,
    /// Position → slots of the inclusion-maximal already-assigned faces
    /// `T` with `T ∪ {position}` a source simplex.
    constraint_lists: Vec<Vec<usize>>,
}

impl GenericKernel {
    /// Builds the kernel and the assignment order (position → vertex id).
    ///
    /// The order is static greedy: each next position takes the vertex with
    /// the most already-ordered neighbors in the 1-skeleton, ties to the
    /// smallest vertex id.
    pub fn build(
        space: Arc<TargetSpace>,
        source: &ComplexDescriptor,
    ) -> Result<(Self, Vec<usize>), SearchError> {
        let vertex_count = source.vertex_count()?;
        let dim = source.dimension()?;

        let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for edge in source.faces_of_size(2)? {
            neighbors[edge[0]].push(edge[1]);
            neighbors[edge[1]].push(edge[0]);
        }
        let order = greedy_order(vertex_count, &neighbors);
        let mut position_of = vec![0usize; vertex_count];
        for (pos, &v) in order.iter().enumerate() {
            position_of[v] = pos;
        }
        // A face in position space, sorted ascending (so .last() is the
        // face's final position in assignment order).
        let to_positions = |face: &[usize]| -> Vec<usize> {
            let mut f: Vec<usize> = face.iter().map(|&v| position_of[v]).collect();
            f.sort_unstable();
            f
        };

        let mut slot_ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut slot_faces: Vec<Vec<usize>> = Vec::new();
        for s in 1..=dim {
            for face in source.faces_of_size(s)? {
                let f = to_positions(&face);
                let id = slot_faces.len();
                slot_ids.insert(f.clone(), id);
                slot_faces.push(f);
            }
        }
        let parents: Vec<usize> = slot_faces
            .iter()
            .map(|f| {
                if f.len() == 1 {
                    NO_PARENT
                } else {
                    slot_ids[&f[..f.len() - 1]]
                }
            })
            .collect();
        let mut update_lists: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (id, f) in slot_faces.iter().enumerate() {
            update_lists[*f.last().expect("faces are nonempty")].push(id);
        }

        let mut constraint_lists: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for s in 2..=dim + 1 {
            for face in source.faces_of_size(s)? {
                let f = to_positions(&face);
                let (t, prefix) = f.split_last().expect("faces are nonempty");
                constraint_lists[*t].push(slot_ids[prefix]);
            }
        }
        // Keep only inclusion-maximal constraint faces; smaller ones are
        // implied because span is monotone in the face.
        for list in &mut constraint_lists {
            list.sort_by_key(|&id| std::cmp::Reverse(slot_faces[id].len()));
            let mut kept: Vec<usize> = Vec::new();
            for &id in list.iter() {
                if !kept
                    .iter()
                    .any(|&big| is_subset(&slot_faces[id], &slot_faces[big]))
                {
                    kept.push(id);
                }
            }
            *list = kept;
        }

        let words = bits::words_for(space.size());
        let kernel = GenericKernel {
            space,
            words,
            slot_elems: vec![Vec::new(); slot_faces.len()],
            slot_bits: vec![0u64; words * slot_faces.len()],
            parents,
            update_lists,
            constraint_lists,
        };
        Ok((kernel, order))
    }

    /// Whether `code` may be assigned at `pos`: it must avoid the span of
    /// every maximal already-assigned face extendable by `pos`.
    pub fn check(&self, pos: usize, code: u32) -> bool {
        self.constraint_lists[pos].iter().all(|&slot| {
            let w = &self.slot_bits[slot * self.words..(slot + 1) * self.words];
            !bits::test(w, code)
        })
    }

    pub fn assign(&mut self, pos: usize, code: u32) {
        let p = self.space.p();
        for idx in 0..self.update_lists[pos].len() {
            let slot = self.update_lists[pos][idx];
            let mut elems = std::mem::take(&mut self.slot_elems[slot]);
            let window = &mut self.slot_bits[slot * self.words..(slot + 1) * self.words];
            for &y in &elems {
                bits::clear(window, y);
            }
            elems.clear();
            let parent = self.parents[slot];
            if parent == NO_PARENT {
                elems.push(0);
                for c in 1..p {
                    elems.push(self.space.scale(c, code));
                }
            } else {
                for c in 0..p {
                    let cx = self.space.scale(c, code);
                    for &w in &self.slot_elems[parent] {
                        elems.push(self.space.add(w, cx));
                    }
                }
            }
            let window = &mut self.slot_bits[slot * self.words..(slot + 1) * self.words];
            for &y in &elems {
                bits::set(window, y);
            }
            self.slot_elems[slot] = elems;
        }
    }

    /// Backtracking needs no state changes; stale slots are never read.
    pub fn unassign(&mut self, _pos: usize) {}
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.len() <= big.len() && {
        let mut it = big.iter();
        small.iter().all(|x| it.by_ref().any(|y| y == x))
    }
}

fn greedy_order(n: usize, neighbors: &[Vec<usize>]) -> Vec<usize> {
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut placed_neighbors = vec![0usize; n];
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for v in 0..n {
            if placed[v] {
                continue;
            }
            if best.is_none_or(|b| placed_neighbors[v] > placed_neighbors[b]) {
                best = Some(v);
            }
        }
        let v = best.expect("an unplaced vertex remains");
        placed[v] = true;
        order.push(v);
        for &u in &neighbors[v] {
            placed_neighbors[u] += 1;
        }
    }
    order
}
