//! Budgeted, symmetry-reduced exhaustive backtracking search for
//! nondegenerate simplicial maps into universal complexes `X(F_p^r)`.
//!
//! A simplicial map `f : K → X(F_p^r)` assigns a nonzero vector of `F_p^r`
//! to every vertex of `K`; it is *nondegenerate* when the image of every
//! simplex is linearly independent (equivalently, when this holds for every
//! maximal simplex). [`search_nondegenerate_map`] decides existence for a
//! given `(K, p, r)` by depth-first search over vertex assignments, with
//! two exact symmetry reductions enabled by default:
//!
//! - *scalar-orbit restriction*: rescaling any single image by a nonzero
//!   constant preserves nondegeneracy, so candidate images are restricted
//!   to the leading-one representative of each scalar orbit;
//! - *basis-prefix pinning*: post-composing with any linear automorphism of
//!   `F_p^r` preserves nondegeneracy, and an automorphism can always map
//!   the greedily-independent images (scanning vertices in assignment
//!   order) to `e_1, e_2, …` in order. Whenever a candidate image would be
//!   independent of everything assigned so far, the only candidate tried is
//!   the next unused basis vector.
//!
//! Together these explore exactly one representative per equivalence class
//! of maps under rescaling and automorphisms, so `ExhaustedNone` proves
//! nonexistence outright. Every `Found` witness is re-verified by
//! [`check_nondegenerate`] before being returned.
//!
//! Budgets are approximate: counters are polled every few hundred nodes,
//! where a *node* is one attempted vertex assignment.

pub(crate) mod codes;
mod kernel_generic;
pub(crate) mod kernel_skeleton;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{ComplexDescriptor, ComplexError};
use crate::fplinalg::{linearly_independent, FpError, FpMatrix, FpVector, Prime};

use codes::TargetSpace;
use kernel_generic::GenericKernel;
use kernel_skeleton::SkeletonKernel;

/// Hard cap on `p^r` for running a search (kernel bitsets and candidate
/// lists are sized by the target space).
pub const MAX_SEARCH_TARGET_SIZE: u64 = 1 << 20;

/// How many attempted assignments pass between checks of the shared stop
/// flag and budget; budgets are honored to roughly this granularity per
/// worker.
const POLL_INTERVAL: u64 = 256;

/// Errors from map validation and search setup.
#[derive(Debug, Error)]
pub enum SearchError {
    /// The target space `F_p^r` is too large to search or even to code.
    #[error("target space F_{p}^{r} has {size} vectors, over the limit of {limit}")]
    TargetTooLarge {
        p: u32,
        r: u32,
        size: u64,
        limit: u64,
    },
    /// A vertex map failed structural validation.
    #[error("invalid vertex map: {0}")]
    InvalidMap(String),
    /// A map and a complex disagree on the number of vertices.
    #[error("map assigns {map_vertices} vertices but the complex has {complex_vertices}")]
    VertexCountMismatch {
        map_vertices: usize,
        complex_vertices: usize,
    },
    /// A search produced a witness that failed independent re-verification.
    /// This indicates a bug in the kernels and should never occur.
    #[error("internal error: a search witness failed re-verification")]
    WitnessVerificationFailed,
    /// An underlying complex error.
    #[error(transparent)]
    Complex(#[from] ComplexError),
    /// An underlying field or shape error.
    #[error(transparent)]
    Fp(#[from] FpError),
}

/// A candidate simplicial map: one image vector per source vertex.
///
/// Images are vectors of `F_p^r`, always nonzero (a zero image could never
/// be nondegenerate, even on a vertex). The JSON form is
///
/// ```json
/// {"p": 2, "r": 2, "assignments": {"0": [1,0], "1": [0,1], "2": [1,1]}}
/// ```
///
/// with one entry per vertex, keyed by the 0-based vertex index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    prime: Prime,
    r: u32,
    images: Vec<FpVector>,
}

impl VertexMap {
    /// Builds a map after validating that every image is a nonzero vector
    /// of length `r` over the right field.
    pub fn new(prime: Prime, r: u32, images: Vec<FpVector>) -> Result<Self, SearchError> {
        for (i, v) in images.iter().enumerate() {
            if v.modulus() != prime {
                return Err(SearchError::InvalidMap(format!(
                    "image of vertex {i} lives over F_{} instead of F_{}",
                    v.modulus(),
                    prime
                )));
            }
            if v.len() != r as usize {
                return Err(SearchError::InvalidMap(format!(
                    "image of vertex {i} has {} coordinates, expected {r}",
                    v.len()
                )));
            }
            if v.is_zero() {
                return Err(SearchError::InvalidMap(format!(
                    "image of vertex {i} is the zero vector"
                )));
            }
        }
        Ok(VertexMap { prime, r, images })
    }

    /// The field the images live over.
    pub fn prime(&self) -> Prime {
        self.prime
    }

    /// The target dimension `r`.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Number of source vertices.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    /// Whether the map has no vertices at all.
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// All images, indexed by vertex.
    pub fn images(&self) -> &[FpVector] {
        &self.images
    }

    /// The image of one vertex.
    pub fn image(&self, vertex: usize) -> &FpVector {
        &self.images[vertex]
    }

    /// Serializes to the JSON wire form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("map serialization cannot fail")
    }

    /// Parses and validates the JSON wire form.
    pub fn from_json(text: &str) -> Result<Self, SearchError> {
        let wire: WireMap = serde_json::from_str(text)
            .map_err(|e| SearchError::InvalidMap(format!("bad JSON: {e}")))?;
        VertexMap::try_from(wire)
    }
}

/// The raw wire form of a [`VertexMap`], before validation.
#[derive(Deserialize)]
struct WireMap {
    p: u32,
    r: u32,
    assignments: BTreeMap<String, Vec<u32>>,
}

impl TryFrom<WireMap> for VertexMap {
    type Error = SearchError;

    fn try_from(wire: WireMap) -> Result<Self, SearchError> {
        let prime = Prime::new(wire.p).map_err(|e| SearchError::InvalidMap(e.to_string()))?;
        let mut by_index: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (key, coords) in wire.assignments {
            let index: usize = key.parse().map_err(|_| {
                SearchError::InvalidMap(format!("assignment key {key:?} is not a vertex index"))
            })?;
            if by_index.insert(index, coords).is_some() {
                return Err(SearchError::InvalidMap(format!(
                    "vertex {index} is assigned twice"
                )));
            }
        }
        let count = by_index.len();
        let mut images = Vec::with_capacity(count);
        for (expected, (index, coords)) in by_index.into_iter().enumerate() {
            if index != expected {
                return Err(SearchError::InvalidMap(format!(
                    "assignment keys must cover 0..{count} exactly, missing {expected}"
                )));
            }
            for (t, &c) in coords.iter().enumerate() {
                if c >= wire.p {
                    return Err(SearchError::InvalidMap(format!(
                        "coordinate {t} of vertex {index} is {c}, out of range for F_{}",
                        wire.p
                    )));
                }
            }
            images.push(FpVector::new(prime, coords));
        }
        VertexMap::new(prime, wire.r, images)
    }
}

impl<'de> Deserialize<'de> for VertexMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireMap::deserialize(deserializer)?;
        VertexMap::try_from(wire).map_err(serde::de::Error::custom)
    }
}

impl Serialize for VertexMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Assignments<'a>(&'a [FpVector]);
        impl Serialize for Assignments<'_> {
            fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (i, v) in self.0.iter().enumerate() {
                    map.serialize_entry(&i.to_string(), v.coords())?;
                }
                map.end()
            }
        }
        let mut st = serializer.serialize_struct("VertexMap", 3)?;
        st.serialize_field("p", &self.prime.get())?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("assignments", &Assignments(&self.images))?;
        st.end()
    }
}

/// Node and wall-clock limits for a search; `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SearchBudget {
    /// Maximum attempted assignments across all workers.
    pub max_nodes: Option<u64>,
    /// Maximum wall-clock seconds.
    pub max_seconds: Option<f64>,
}

impl SearchBudget {
    /// No limits.
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }
}

/// Knobs for [`search_nondegenerate_map`].
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub budget: SearchBudget,
    /// Worker threads. With one worker the search is deterministic and
    /// returns the lexicographically least witness (comparing the code
    /// sequences along the assignment order); with more, any witness may
    /// be returned.
    pub workers: usize,
    /// Scalar-orbit restriction and basis-prefix pinning. Both reductions
    /// are exact; disabling them exists for cross-validation and testing.
    pub symmetry_reduction: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: SearchBudget::unlimited(),
            workers: 1,
            symmetry_reduction: true,
        }
    }
}

/// Work counters for a finished or interrupted search.
#[derive(Debug, Clone)]
pub struct SearchStats {
    /// Attempted vertex assignments, summed over workers.
    pub nodes: u64,
    pub elapsed: Duration,
    pub workers: usize,
}

/// The verdict of a search.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    /// A nondegenerate map exists; `map` is a re-verified witness.
    Found { map: VertexMap, stats: SearchStats },
    /// The full (symmetry-reduced) space was exhausted: no map exists.
    ExhaustedNone { stats: SearchStats },
    /// The budget ran out before either verdict.
    BudgetExceeded { stats: SearchStats },
}

impl SearchOutcome {
    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Found { stats, .. }
            | SearchOutcome::ExhaustedNone { stats }
            | SearchOutcome::BudgetExceeded { stats } => stats,
        }
    }

    /// The witness, when the outcome is `Found`.
    pub fn found_map(&self) -> Option<&VertexMap> {
        match self {
            SearchOutcome::Found { map, .. } => Some(map),
            _ => None,
        }
    }
}

/// The verdict of [`check_nondegenerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Nondegenerate,
    /// Some maximal simplex has a linearly dependent image.
    Degenerate {
        simplex: Vec<usize>,
    },
}

/// Checks a map for nondegeneracy by testing every *maximal* simplex of the
/// source: a set of vectors is independent exactly when every subset is, so
/// maximal simplices suffice.
pub fn check_nondegenerate(
    source: &ComplexDescriptor,
    map: &VertexMap,
) -> Result<CheckResult, SearchError> {
    source.validate()?;
    let complex_vertices = source.vertex_count()?;
    if map.len() != complex_vertices {
        return Err(SearchError::VertexCountMismatch {
            map_vertices: map.len(),
            complex_vertices,
        });
    }
    for simplex in source.maximal_simplices()? {
        let columns: Vec<FpVector> = simplex.iter().map(|&v| map.image(v).clone()).collect();
        if !linearly_independent(&columns)? {
            return Ok(CheckResult::Degenerate { simplex });
        }
    }
    Ok(CheckResult::Nondegenerate)
}

/// Rescales each image by a nonzero scalar (`scalars[i]` for vertex `i`).
///
/// Rescaling never changes ranks of image families, so it preserves
/// nondegeneracy; this is the symmetry behind the orbit restriction.
pub fn apply_scalar_reweighting(
    map: &VertexMap,
    scalars: &[u32],
) -> Result<VertexMap, SearchError> {
    if scalars.len() != map.len() {
        return Err(SearchError::InvalidMap(format!(
            "got {} scalars for {} vertices",
            scalars.len(),
            map.len()
        )));
    }
    let p = map.prime();
    let images = map
        .images()
        .iter()
        .zip(scalars)
        .enumerate()
        .map(|(i, (v, &c))| {
            if c % p.get() == 0 {
                return Err(SearchError::InvalidMap(format!(
                    "scalar for vertex {i} is zero mod {p}"
                )));
            }
            Ok(v.scaled(c))
        })
        .collect::<Result<Vec<_>, _>>()?;
    VertexMap::new(p, map.r(), images)
}

/// Brings a map to a normal form under the search symmetries:
/// post-composition by an automorphism of `F_p^r` sending the greedily
/// independent images (scanning vertices in index order) to `e_1, e_2, …`,
/// then scaling every image to its leading-one orbit representative.
///
/// The operation is idempotent, and nondegeneracy of the input is
/// preserved (both steps are rank-preserving).
pub fn canonical_witness(map: &VertexMap) -> Result<VertexMap, SearchError> {
    let prime = map.prime();
    let r = map.r() as usize;
    let mut basis: Vec<FpVector> = Vec::new();
    for v in map.images() {
        if basis.len() == r {
            break;
        }
        basis.push(v.clone());
        if !linearly_independent(&basis)? {
            basis.pop();
        }
    }
    for j in 0..r {
        if basis.len() == r {
            break;
        }
        basis.push(FpVector::basis(prime, r, j));
        if !linearly_independent(&basis)? {
            basis.pop();
        }
    }
    let change = FpMatrix::from_columns(&basis)?;
    let inverse = change.inverse()?.expect("a completed basis is invertible");
    let images = map
        .images()
        .iter()
        .map(|v| {
            let w = inverse.mul_vector(v)?;
            Ok(w.normalized_leading_one()
                .expect("automorphisms preserve nonzero vectors"))
        })
        .collect::<Result<Vec<_>, SearchError>>()?;
    VertexMap::new(prime, map.r(), images)
}

/// Either search kernel; the driver is kernel-agnostic.
#[derive(Clone)]
enum KernelImpl {
    Skeleton(SkeletonKernel),
    Generic(GenericKernel),
}

impl KernelImpl {
    fn check(&self, pos: usize, code: u32) -> bool {
        match self {
            KernelImpl::Skeleton(k) => k.check(code),
            KernelImpl::Generic(k) => k.check(pos, code),
        }
    }

    fn assign(&mut self, pos: usize, code: u32) {
        match self {
            KernelImpl::Skeleton(k) => k.assign(code),
            KernelImpl::Generic(k) => k.assign(pos, code),
        }
    }

    fn unassign(&mut self, pos: usize) {
        match self {
            KernelImpl::Skeleton(k) => k.unassign(),
            KernelImpl::Generic(k) => k.unassign(pos),
        }
    }
}

/// Immutable per-search context shared by all workers.
struct SearchContext {
    space: Arc<TargetSpace>,
    kernel: KernelImpl,
    /// Position (assignment order) → vertex id.
    order: Vec<usize>,
    /// Candidate code lists: indexed by used dimension when pinning is on,
    /// a single list otherwise.
    candidates: Vec<Vec<u32>>,
    pinned: bool,
    positions: usize,
}

impl SearchContext {
    fn candidate_list(&self, used_dim: u32) -> &[u32] {
        if self.pinned {
            &self.candidates[used_dim as usize]
        } else {
            &self.candidates[0]
        }
    }
}

/// Mutable state shared across workers.
struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    budget_exceeded: AtomicBool,
    witness: Mutex<Option<Vec<u32>>>,
    start: Instant,
    budget: SearchBudget,
}

impl Shared {
    fn new(budget: SearchBudget, start: Instant) -> Self {
        Shared {
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            budget_exceeded: AtomicBool::new(false),
            witness: Mutex::new(None),
            start,
            budget,
        }
    }

    fn flush(&self, local: &mut u64) -> u64 {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        total
    }

    /// Flushes local node counts and reports whether this worker must stop.
    fn poll(&self, local: &mut u64) -> bool {
        let total = self.flush(local);
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        let over_nodes = self.budget.max_nodes.is_some_and(|mx| total >= mx);
        let over_time = self
            .budget
            .max_seconds
            .is_some_and(|mx| self.start.elapsed().as_secs_f64() >= mx);
        if over_nodes || over_time {
            self.budget_exceeded.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }
}

enum TaskResult {
    Found(Vec<u32>),
    Exhausted,
    Stopped,
}

/// Depth-first search below a fixed assignment prefix.
fn dfs_from_prefix(ctx: &SearchContext, prefix: &[u32], shared: &Shared) -> TaskResult {
    let r = ctx.space.r();
    let mut kernel = ctx.kernel.clone();
    let mut used_dim: u32 = 0;
    for (pos, &code) in prefix.iter().enumerate() {
        kernel.assign(pos, code);
        if used_dim < r && code == ctx.space.basis_code(used_dim) {
            used_dim += 1;
        }
    }
    let base = prefix.len();
    let mut codes: Vec<u32> = prefix.to_vec();
    // One frame per assignment below the prefix: the candidate index taken
    // and the used dimension before the assignment.
    let mut frames: Vec<(usize, u32)> = Vec::new();
    let mut cursor: usize = 0;
    let mut local_nodes: u64 = 0;
    let mut since_poll: u64 = 0;
    loop {
        let depth = base + frames.len();
        if depth == ctx.positions {
            shared.flush(&mut local_nodes);
            return TaskResult::Found(codes);
        }
        let list = ctx.candidate_list(used_dim);
        let mut chosen = None;
        let mut idx = cursor;
        while idx < list.len() {
            local_nodes += 1;
            since_poll += 1;
            if since_poll >= POLL_INTERVAL {
                since_poll = 0;
                if shared.poll(&mut local_nodes) {
                    return TaskResult::Stopped;
                }
            }
            let code = list[idx];
            if kernel.check(depth, code) {
                chosen = Some((idx, code));
                break;
            }
            idx += 1;
        }
        match chosen {
            Some((idx, code)) => {
                kernel.assign(depth, code);
                frames.push((idx, used_dim));
                codes.push(code);
                if used_dim < r && code == ctx.space.basis_code(used_dim) {
                    used_dim += 1;
                }
                cursor = 0;
            }
            None => {
                let Some((idx, dim_before)) = frames.pop() else {
                    shared.flush(&mut local_nodes);
                    return TaskResult::Exhausted;
                };
                codes.pop();
                kernel.unassign(base + frames.len());
                used_dim = dim_before;
                cursor = idx + 1;
            }
        }
    }
}

enum Expansion {
    Tasks(Vec<Vec<u32>>),
    Done(TaskResult),
}

/// Breadth-first expansion of assignment prefixes until at least
/// `target_count` independent tasks exist (or the search resolves outright).
fn expand_tasks(ctx: &SearchContext, shared: &Shared, target_count: usize) -> Expansion {
    let r = ctx.space.r();
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    let mut local_nodes: u64 = 0;
    while frontier.len() < target_count {
        let depth = frontier[0].len();
        if depth == ctx.positions {
            shared.flush(&mut local_nodes);
            return Expansion::Done(TaskResult::Found(frontier.swap_remove(0)));
        }
        let mut next: Vec<Vec<u32>> = Vec::new();
        for prefix in &frontier {
            let mut kernel = ctx.kernel.clone();
            let mut used_dim: u32 = 0;
            for (pos, &code) in prefix.iter().enumerate() {
                kernel.assign(pos, code);
                if used_dim < r && code == ctx.space.basis_code(used_dim) {
                    used_dim += 1;
                }
            }
            for &code in ctx.candidate_list(used_dim) {
                local_nodes += 1;
                if local_nodes >= POLL_INTERVAL && shared.poll(&mut local_nodes) {
                    return Expansion::Done(TaskResult::Stopped);
                }
                if kernel.check(depth, code) {
                    let mut child = prefix.clone();
                    child.push(code);
                    if depth + 1 == ctx.positions {
                        shared.flush(&mut local_nodes);
                        return Expansion::Done(TaskResult::Found(child));
                    }
                    next.push(child);
                }
            }
        }
        shared.flush(&mut local_nodes);
        if next.is_empty() {
            return Expansion::Done(TaskResult::Exhausted);
        }
        frontier = next;
    }
    shared.flush(&mut local_nodes);
    Expansion::Tasks(frontier)
}

fn run_parallel(ctx: &SearchContext, shared: &Shared, workers: usize) -> TaskResult {
    let tasks = match expand_tasks(ctx, shared, workers * 4) {
        Expansion::Done(result) => return result,
        Expansion::Tasks(tasks) => tasks,
    };
    let cursor = AtomicUsize::new(0);
    let thread_count = workers.min(tasks.len());
    std::thread::scope(|scope| {
        for _ in 0..thread_count {
            scope.spawn(|| loop {
                if shared.stop.load(Ordering::Relaxed) {
                    break;
                }
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                if i >= tasks.len() {
                    break;
                }
                match dfs_from_prefix(ctx, &tasks[i], shared) {
                    TaskResult::Found(codes) => {
                        let mut slot = shared.witness.lock().expect("witness mutex");
                        if slot.is_none() {
                            *slot = Some(codes);
                        }
                        shared.stop.store(true, Ordering::Relaxed);
                        break;
                    }
                    TaskResult::Exhausted => continue,
                    TaskResult::Stopped => break,
                }
            });
        }
    });
    let witness = shared.witness.lock().expect("witness mutex").take();
    if let Some(codes) = witness {
        return TaskResult::Found(codes);
    }
    if shared.budget_exceeded.load(Ordering::Relaxed) {
        return TaskResult::Stopped;
    }
    TaskResult::Exhausted
}

fn map_from_codes(ctx: &SearchContext, codes: &[u32]) -> Result<VertexMap, SearchError> {
    let mut images: Vec<Option<FpVector>> = vec![None; ctx.positions];
    for (pos, &code) in codes.iter().enumerate() {
        images[ctx.order[pos]] = Some(ctx.space.vector(code));
    }
    let images = images
        .into_iter()
        .map(|v| v.expect("every position is assigned"))
        .collect();
    VertexMap::new(ctx.space.prime(), ctx.space.r(), images)
}

/// Decides whether a nondegenerate simplicial map `source → X(F_p^r)`
/// exists, by exhaustive symmetry-reduced backtracking.
///
/// Returns `Found` with a re-verified witness, `ExhaustedNone` when the
/// search space is provably empty, or `BudgetExceeded`. A target too small
/// for the source's largest simplex short-circuits to `ExhaustedNone`
/// without searching.
pub fn search_nondegenerate_map(
    source: &ComplexDescriptor,
    p: Prime,
    r: u32,
    options: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    source.validate()?;
    let start = Instant::now();
    let workers = options.workers.max(1);
    let positions = source.vertex_count()?;
    let max_simplex = source.dimension()? + 1;
    if (r as usize) < max_simplex {
        // A simplex with more vertices than the target dimension can never
        // have a linearly independent image.
        return Ok(SearchOutcome::ExhaustedNone {
            stats: SearchStats {
                nodes: 0,
                elapsed: start.elapsed(),
                workers,
            },
        });
    }
    let space = Arc::new(TargetSpace::new(p, r)?);
    if u64::from(space.size()) > MAX_SEARCH_TARGET_SIZE {
        return Err(SearchError::TargetTooLarge {
            p: p.get(),
            r,
            size: u64::from(space.size()),
            limit: MAX_SEARCH_TARGET_SIZE,
        });
    }
    let (kernel, order) = match source {
        ComplexDescriptor::Skeleton { m, k } => (
            KernelImpl::Skeleton(SkeletonKernel::new(space.clone(), *k as usize)),
            (0..=*m as usize).collect(),
        ),
        _ => {
            let (kernel, order) = GenericKernel::build(space.clone(), source)?;
            (KernelImpl::Generic(kernel), order)
        }
    };
    let candidates = if options.symmetry_reduction {
        space.pinned_candidates()
    } else {
        vec![space.all_candidates()]
    };
    let ctx = SearchContext {
        space,
        kernel,
        order,
        candidates,
        pinned: options.symmetry_reduction,
        positions,
    };
    let shared = Shared::new(options.budget, start);
    let result = if workers == 1 {
        dfs_from_prefix(&ctx, &[], &shared)
    } else {
        run_parallel(&ctx, &shared, workers)
    };
    let stats = SearchStats {
        nodes: shared.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
        workers,
    };
    match result {
        TaskResult::Found(codes) => {
            let map = map_from_codes(&ctx, &codes)?;
            match check_nondegenerate(source, &map)? {
                CheckResult::Nondegenerate => Ok(SearchOutcome::Found { map, stats }),
                CheckResult::Degenerate { .. } => Err(SearchError::WitnessVerificationFailed),
            }
        }
        TaskResult::Exhausted => Ok(SearchOutcome::ExhaustedNone { stats }),
        TaskResult::Stopped => Ok(SearchOutcome::BudgetExceeded { stats }),
    }
}
