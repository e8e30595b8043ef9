//! The PDAG data structure: hashed per-vertex neighbor sets with liveness
//! flags, plus the adjacency, potential-sink and removal primitives every
//! algorithm in this crate is built on.

use rustc_hash::{FxHashSet, FxHasher};
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

/// Dense vertex index in `[0, n)`. Ids stay stable across vertex removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Relation between an ordered vertex pair `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// `u -> v`
    ArcForward,
    /// `u <- v`
    ArcBackward,
    /// `u -- v`
    Undirected,
    /// no edge between the pair
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} is out of range for a graph on {1} vertices")]
    OutOfRange(VertexId, usize),
    #[error("vertex {0} has been removed")]
    DeadVertex(VertexId),
    #[error("self-loop at vertex {0} rejected")]
    SelfLoop(VertexId),
    #[error("an edge between {0} and {1} already exists")]
    DuplicateEdge(VertexId, VertexId),
    #[error("no undirected edge between {0} and {1} to orient")]
    NotUndirected(VertexId, VertexId),
    #[error("graph has undirected edges and is not a DAG")]
    HasUndirected,
    #[error("directed cycle: {}", fmt_cycle(.0))]
    NotAcyclic(Vec<VertexId>),
}

fn fmt_cycle(cycle: &[VertexId]) -> String {
    let ids: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
    ids.join(" -> ")
}

/// Structural invariant violation reported by [`Pdag::validate`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("directed cycle: {}", fmt_cycle(.0))]
    DirectedCycle(Vec<VertexId>),
    #[error("asymmetric neighbor sets between {0} and {1}")]
    Asymmetry(VertexId, VertexId),
    #[error("vertex {1} appears in more than one neighbor set of {0}")]
    Overlap(VertexId, VertexId),
}

/// Operation counters shared by a graph and its working copies.
///
/// `adj_tests` counts [`Pdag::adjacency`]/[`Pdag::adjacent`] calls,
/// `ps_checks` counts candidate potential-sink examinations. Relaxed atomics:
/// graphs are single-writer, counters only need to survive `&self` access.
#[derive(Debug, Default)]
pub struct OpCounters {
    adj_tests: AtomicU64,
    ps_checks: AtomicU64,
}

/// Point-in-time copy of a graph's operation counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CounterSnapshot {
    pub adj_tests: u64,
    pub ps_checks: u64,
}

/// Partially directed acyclic graph over dense vertex ids.
///
/// Neighbors are kept in three hashed sets per vertex (parents, children,
/// siblings), giving expected-constant adjacency tests and edge deletion.
/// Removing a vertex flips its liveness flag instead of re-indexing, so ids
/// remain valid across an elimination sequence. Acyclicity is validated on
/// demand via [`Pdag::validate`], not per mutation.
pub struct Pdag {
    n: usize,
    parents: Vec<FxHashSet<VertexId>>,
    children: Vec<FxHashSet<VertexId>>,
    siblings: Vec<FxHashSet<VertexId>>,
    alive: Vec<bool>,
    alive_count: usize,
    arc_count: usize,
    undirected_count: usize,
    counters: Arc<OpCounters>,
}

impl Clone for Pdag {
    /// Independent copy with its own counters (values carried over).
    fn clone(&self) -> Self {
        let counters = OpCounters {
            adj_tests: AtomicU64::new(self.counters.adj_tests.load(Ordering::Relaxed)),
            ps_checks: AtomicU64::new(self.counters.ps_checks.load(Ordering::Relaxed)),
        };
        Pdag {
            n: self.n,
            parents: self.parents.clone(),
            children: self.children.clone(),
            siblings: self.siblings.clone(),
            alive: self.alive.clone(),
            alive_count: self.alive_count,
            arc_count: self.arc_count,
            undirected_count: self.undirected_count,
            counters: Arc::new(counters),
        }
    }
}

impl PartialEq for Pdag {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.alive == other.alive
            && self.parents == other.parents
            && self.children == other.children
            && self.siblings == other.siblings
    }
}

impl Eq for Pdag {}

impl fmt::Debug for Pdag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Pdag")
            .field("n", &self.n)
            .field("arcs", &self.arc_count)
            .field("undirected", &self.undirected_count)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Pdag {
    pub fn new(n: usize) -> Self {
        Pdag {
            n,
            parents: vec![FxHashSet::default(); n],
            children: vec![FxHashSet::default(); n],
            siblings: vec![FxHashSet::default(); n],
            alive: vec![true; n],
            alive_count: n,
            arc_count: 0,
            undirected_count: 0,
            counters: Arc::new(OpCounters::default()),
        }
    }

    /// Copy that reports into the same operation counters as `self`.
    pub(crate) fn working_copy(&self) -> Pdag {
        let mut copy = self.clone();
        copy.counters = Arc::clone(&self.counters);
        copy
    }

    /// Empty graph with the same vertex count and liveness mask as `self`.
    pub(crate) fn same_shape(&self) -> Pdag {
        let mut g = Pdag::new(self.n);
        g.alive = self.alive.clone();
        g.alive_count = self.alive_count;
        g.counters = Arc::clone(&self.counters);
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_alive(&self, v: VertexId) -> bool {
        v.index() < self.n && self.alive[v.index()]
    }

    #[inline]
    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n)
            .filter(|&i| self.alive[i])
            .map(|i| VertexId(i as u32))
    }

    #[inline]
    fn assert_alive(&self, v: VertexId) {
        assert!(
            v.index() < self.n,
            "vertex {v} out of range for graph on {} vertices",
            self.n
        );
        assert!(self.alive[v.index()], "vertex {v} has been removed");
    }

    fn check_endpoints(&self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        for x in [u, v] {
            if x.index() >= self.n {
                return Err(GraphError::OutOfRange(x, self.n));
            }
            if !self.alive[x.index()] {
                return Err(GraphError::DeadVertex(x));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    /// Uncounted pair lookup used internally by mutations.
    #[inline]
    fn kind_between(&self, u: VertexId, v: VertexId) -> EdgeKind {
        if self.children[u.index()].contains(&v) {
            EdgeKind::ArcForward
        } else if self.parents[u.index()].contains(&v) {
            EdgeKind::ArcBackward
        } else if self.siblings[u.index()].contains(&v) {
            EdgeKind::Undirected
        } else {
            EdgeKind::None
        }
    }

    pub fn add_arc(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check_endpoints(u, v)?;
        if self.kind_between(u, v) != EdgeKind::None {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.children[u.index()].insert(v);
        self.parents[v.index()].insert(u);
        self.arc_count += 1;
        Ok(())
    }

    pub fn add_undirected(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check_endpoints(u, v)?;
        if self.kind_between(u, v) != EdgeKind::None {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.siblings[u.index()].insert(v);
        self.siblings[v.index()].insert(u);
        self.undirected_count += 1;
        Ok(())
    }

    /// Replaces the undirected edge `from -- to` with the arc `from -> to`.
    pub fn orient(&mut self, from: VertexId, to: VertexId) -> Result<(), GraphError> {
        self.check_endpoints(from, to)?;
        if !self.siblings[from.index()].contains(&to) {
            return Err(GraphError::NotUndirected(from, to));
        }
        self.siblings[from.index()].remove(&to);
        self.siblings[to.index()].remove(&from);
        self.children[from.index()].insert(to);
        self.parents[to.index()].insert(from);
        self.undirected_count -= 1;
        self.arc_count += 1;
        Ok(())
    }

    /// The unique edge kind between `u` and `v`, counted as one adjacency
    /// test. Panics if an endpoint is dead or out of range.
    #[inline]
    pub fn adjacency(&self, u: VertexId, v: VertexId) -> EdgeKind {
        self.assert_alive(u);
        self.assert_alive(v);
        assert!(u != v, "adjacency query with identical endpoints {u}");
        self.counters.adj_tests.fetch_add(1, Ordering::Relaxed);
        self.kind_between(u, v)
    }

    /// True if any edge connects `u` and `v` (one adjacency test).
    #[inline]
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency(u, v) != EdgeKind::None
    }

    /// Pair lookup that bypasses the adjacency-test counter, for audits and
    /// oracles that must not distort instrumentation.
    #[inline]
    pub(crate) fn adjacency_uncounted(&self, u: VertexId, v: VertexId) -> EdgeKind {
        self.assert_alive(u);
        self.assert_alive(v);
        self.kind_between(u, v)
    }

    pub fn parents_of(&self, v: VertexId) -> &FxHashSet<VertexId> {
        self.assert_alive(v);
        &self.parents[v.index()]
    }

    pub fn children_of(&self, v: VertexId) -> &FxHashSet<VertexId> {
        self.assert_alive(v);
        &self.children[v.index()]
    }

    pub fn siblings_of(&self, v: VertexId) -> &FxHashSet<VertexId> {
        self.assert_alive(v);
        &self.siblings[v.index()]
    }

    /// The disjoint parent, children and sibling sets of `v`.
    pub fn neighborhood(
        &self,
        v: VertexId,
    ) -> (
        &FxHashSet<VertexId>,
        &FxHashSet<VertexId>,
        &FxHashSet<VertexId>,
    ) {
        self.assert_alive(v);
        (
            &self.parents[v.index()],
            &self.children[v.index()],
            &self.siblings[v.index()],
        )
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.assert_alive(v);
        self.parents[v.index()].len()
            + self.children[v.index()].len()
            + self.siblings[v.index()].len()
    }

    /// All neighbors of `v` as a sorted list.
    pub fn neighbors_sorted(&self, v: VertexId) -> Vec<VertexId> {
        self.assert_alive(v);
        let mut out: Vec<VertexId> = self.parents[v.index()]
            .iter()
            .chain(self.children[v.index()].iter())
            .chain(self.siblings[v.index()].iter())
            .copied()
            .collect();
        out.sort_unstable();
        out
    }

    /// Potential-sink test: no outgoing arc, and every sibling adjacent to
    /// all other neighbors. Short-circuits on the first missing edge.
    ///
    /// Neighbor pairs are enumerated in ascending id order, so the adjacency
    /// tests performed for a given vertex are reproducible.
    pub fn is_potential_sink(&self, v: VertexId) -> bool {
        self.assert_alive(v);
        self.note_ps_check();
        if !self.children[v.index()].is_empty() {
            return false;
        }
        let sibs = sorted(&self.siblings[v.index()]);
        let pars = sorted(&self.parents[v.index()]);
        for (i, &y) in sibs.iter().enumerate() {
            for &x in &sibs[i + 1..] {
                if !self.adjacent(y, x) {
                    return false;
                }
            }
            for &p in &pars {
                if !self.adjacent(y, p) {
                    return false;
                }
            }
        }
        true
    }

    #[inline]
    pub(crate) fn note_ps_check(&self) {
        self.counters.ps_checks.fetch_add(1, Ordering::Relaxed);
    }

    /// Marks `v` dead and strips its incident edges from every neighbor.
    /// Returns the removed edges as `(neighbor, kind as seen from v)` pairs,
    /// sorted by neighbor id.
    pub fn remove_vertex(&mut self, v: VertexId) -> Vec<(VertexId, EdgeKind)> {
        self.assert_alive(v);
        let vi = v.index();
        let mut removed = Vec::with_capacity(self.degree(v));
        for &p in &self.parents[vi] {
            removed.push((p, EdgeKind::ArcBackward));
        }
        for &c in &self.children[vi] {
            removed.push((c, EdgeKind::ArcForward));
        }
        for &s in &self.siblings[vi] {
            removed.push((s, EdgeKind::Undirected));
        }
        removed.sort_unstable();
        for &(u, kind) in &removed {
            match kind {
                EdgeKind::ArcBackward => {
                    self.children[u.index()].remove(&v);
                    self.arc_count -= 1;
                }
                EdgeKind::ArcForward => {
                    self.parents[u.index()].remove(&v);
                    self.arc_count -= 1;
                }
                EdgeKind::Undirected => {
                    self.siblings[u.index()].remove(&v);
                    self.undirected_count -= 1;
                }
                EdgeKind::None => unreachable!(),
            }
        }
        self.parents[vi].clear();
        self.children[vi].clear();
        self.siblings[vi].clear();
        self.alive[vi] = false;
        self.alive_count -= 1;
        removed
    }

    /// Checks set symmetry, disjointness and arc acyclicity. Returns the
    /// first violation found instead of aborting.
    pub fn validate(&self) -> Result<(), ValidationError> {
        for i in 0..self.n {
            if !self.alive[i] {
                continue;
            }
            let v = VertexId(i as u32);
            for &p in &self.parents[i] {
                if !self.is_alive(p) || !self.children[p.index()].contains(&v) {
                    return Err(ValidationError::Asymmetry(v, p));
                }
                if self.children[i].contains(&p) || self.siblings[i].contains(&p) {
                    return Err(ValidationError::Overlap(v, p));
                }
            }
            for &c in &self.children[i] {
                if !self.is_alive(c) || !self.parents[c.index()].contains(&v) {
                    return Err(ValidationError::Asymmetry(v, c));
                }
                if self.siblings[i].contains(&c) {
                    return Err(ValidationError::Overlap(v, c));
                }
            }
            for &s in &self.siblings[i] {
                if s == v {
                    return Err(ValidationError::Overlap(v, s));
                }
                if !self.is_alive(s) || !self.siblings[s.index()].contains(&v) {
                    return Err(ValidationError::Asymmetry(v, s));
                }
            }
        }
        if let Some(cycle) = self.find_directed_cycle() {
            return Err(ValidationError::DirectedCycle(cycle));
        }
        Ok(())
    }

    /// One directed cycle among the arcs, if any, as a vertex sequence
    /// `c1 -> c2 -> ... -> ck -> c1`.
    pub fn find_directed_cycle(&self) -> Option<Vec<VertexId>> {
        // iterative DFS; 0 = white, 1 = on stack, 2 = done
        let mut color = vec![0u8; self.n];
        let mut stack: Vec<(usize, Vec<VertexId>, usize)> = Vec::new();
        for start in 0..self.n {
            if !self.alive[start] || color[start] != 0 {
                continue;
            }
            let kids = sorted(&self.children[start]);
            stack.push((start, kids, 0));
            color[start] = 1;
            let mut path = vec![VertexId(start as u32)];
            while let Some(frame) = stack.last_mut() {
                let (u, kids, next) = (frame.0, &frame.1, frame.2);
                if next < kids.len() {
                    let w = kids[next];
                    frame.2 += 1;
                    match color[w.index()] {
                        0 => {
                            color[w.index()] = 1;
                            path.push(w);
                            let wk = sorted(&self.children[w.index()]);
                            stack.push((w.index(), wk, 0));
                        }
                        1 => {
                            let from = path.iter().position(|&x| x == w).unwrap();
                            return Some(path[from..].to_vec());
                        }
                        _ => {}
                    }
                } else {
                    color[u] = 2;
                    path.pop();
                    stack.pop();
                }
            }
        }
        None
    }

    /// All triples `(u, v, w)` with `u -> v <- w`, `u` and `w` non-adjacent,
    /// canonicalized so `u < w`.
    pub fn v_structures(&self) -> BTreeSet<(VertexId, VertexId, VertexId)> {
        let mut out = BTreeSet::new();
        for v in self.alive_vertices() {
            let pars = sorted(&self.parents[v.index()]);
            for i in 0..pars.len() {
                for j in i + 1..pars.len() {
                    if !self.adjacent(pars[i], pars[j]) {
                        out.insert((pars[i], v, pars[j]));
                    }
                }
            }
        }
        out
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    #[inline]
    pub fn undirected_count(&self) -> usize {
        self.undirected_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.arc_count + self.undirected_count
    }

    /// Canonical edge list: arcs as `(tail, head)`, undirected edges with the
    /// smaller endpoint first, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, EdgeKind)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.alive_vertices() {
            for &c in &self.children[u.index()] {
                out.push((u, c, EdgeKind::ArcForward));
            }
            for &s in &self.siblings[u.index()] {
                if u < s {
                    out.push((u, s, EdgeKind::Undirected));
                }
            }
        }
        out.sort_unstable_by_key(|&(u, v, _)| (u, v));
        out
    }

    /// Arcs `(tail, head)` sorted lexicographically.
    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.arc_count);
        for u in self.alive_vertices() {
            for &c in &self.children[u.index()] {
                out.push((u, c));
            }
        }
        out.sort_unstable();
        out
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn undirected_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.undirected_count);
        for u in self.alive_vertices() {
            for &s in &self.siblings[u.index()] {
                if u < s {
                    out.push((u, s));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn counters(&self) -> CounterSnapshot {
        CounterSnapshot {
            adj_tests: self.counters.adj_tests.load(Ordering::Relaxed),
            ps_checks: self.counters.ps_checks.load(Ordering::Relaxed),
        }
    }

    pub fn reset_counters(&self) {
        self.counters.adj_tests.store(0, Ordering::Relaxed);
        self.counters.ps_checks.store(0, Ordering::Relaxed);
    }

    /// Order-independent structural hash (debug plumbing for traces).
    pub fn canonical_hash(&self) -> u64 {
        let mut h = FxHasher::default();
        self.n.hash(&mut h);
        self.alive.hash(&mut h);
        for (u, v, kind) in self.edges() {
            (u.0, v.0, kind == EdgeKind::Undirected).hash(&mut h);
        }
        h.finish()
    }
}

/// Set contents as a sorted vector; the deterministic iteration order used
/// whenever neighbor enumeration is observable.
pub(crate) fn sorted(set: &FxHashSet<VertexId>) -> Vec<VertexId> {
    let mut v: Vec<VertexId> = set.iter().copied().collect();
    v.sort_unstable();
    v
}

/// Directed acyclic graph: a [`Pdag`] with no undirected edges, carrying a
/// lazily computed topological order.
#[derive(Debug, Clone)]
pub struct Dag {
    g: Pdag,
    topo: std::sync::OnceLock<Vec<VertexId>>,
}

impl PartialEq for Dag {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g
    }
}

impl Eq for Dag {}

impl Dag {
    /// Wraps a PDAG after checking it has no undirected edges and no
    /// directed cycle.
    pub fn try_from_pdag(g: Pdag) -> Result<Dag, GraphError> {
        if g.undirected_count() != 0 {
            return Err(GraphError::HasUndirected);
        }
        if let Some(cycle) = g.find_directed_cycle() {
            return Err(GraphError::NotAcyclic(cycle));
        }
        Ok(Dag {
            g,
            topo: std::sync::OnceLock::new(),
        })
    }

    /// Wraps an extension output together with its known topological order.
    pub(crate) fn from_extension(g: Pdag, topo: Vec<VertexId>) -> Dag {
        debug_assert!(g.undirected_count() == 0);
        debug_assert!(is_topological_order(&g, &topo));
        let cell = std::sync::OnceLock::new();
        let _ = cell.set(topo);
        Dag { g, topo: cell }
    }

    #[inline]
    pub fn as_pdag(&self) -> &Pdag {
        &self.g
    }

    pub fn into_pdag(self) -> Pdag {
        self.g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn parents_of(&self, v: VertexId) -> &FxHashSet<VertexId> {
        self.g.parents_of(v)
    }

    pub fn children_of(&self, v: VertexId) -> &FxHashSet<VertexId> {
        self.g.children_of(v)
    }

    pub fn adjacency(&self, u: VertexId, v: VertexId) -> EdgeKind {
        self.g.adjacency(u, v)
    }

    /// Topological order over the alive vertices, cached after first use.
    pub fn topological_order(&self) -> &[VertexId] {
        self.topo.get_or_init(|| {
            kahn_topological_order(&self.g).expect("Dag invariant: arcs are acyclic")
        })
    }
}

/// Kahn's algorithm with ascending-id tie-breaking; `None` on a cycle.
pub(crate) fn kahn_topological_order(g: &Pdag) -> Option<Vec<VertexId>> {
    let mut indeg: Vec<usize> = (0..g.n()).map(|_| 0).collect();
    for v in g.alive_vertices() {
        indeg[v.index()] = g.parents_of(v).len();
    }
    let mut ready: BTreeSet<VertexId> = g
        .alive_vertices()
        .filter(|&v| indeg[v.index()] == 0)
        .collect();
    let mut order = Vec::with_capacity(g.alive_count());
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        order.push(v);
        for &c in g.children_of(v) {
            indeg[c.index()] -= 1;
            if indeg[c.index()] == 0 {
                ready.insert(c);
            }
        }
    }
    (order.len() == g.alive_count()).then_some(order)
}

pub(crate) fn is_topological_order(g: &Pdag, order: &[VertexId]) -> bool {
    if order.len() != g.alive_count() {
        return false;
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        if !g.is_alive(v) || pos[v.index()] != usize::MAX {
            return false;
        }
        pos[v.index()] = i;
    }
    g.alive_vertices()
        .all(|u| g.children_of(u).iter().all(|&c| pos[u.index()] < pos[c.index()]))
}

/// Chordality of the undirected (sibling) part via maximum cardinality
/// search and a perfect-elimination check. Arcs are ignored.
pub fn is_chordal(g: &Pdag) -> bool {
    let alive: Vec<VertexId> = g.alive_vertices().collect();
    let n = g.n();
    let mut label = vec![0usize; n];
    let mut picked = vec![false; n];
    let mut order: Vec<VertexId> = Vec::with_capacity(alive.len());
    for _ in 0..alive.len() {
        let mut best: Option<VertexId> = None;
        for &v in &alive {
            if picked[v.index()] {
                continue;
            }
            match best {
                Some(b) if label[v.index()] <= label[b.index()] => {}
                _ => best = Some(v),
            }
        }
        let v = best.unwrap();
        picked[v.index()] = true;
        order.push(v);
        for &u in g.siblings_of(v) {
            if !picked[u.index()] {
                label[u.index()] += 1;
            }
        }
    }
    // Reverse MCS order is a perfect elimination ordering iff chordal: for
    // each vertex, its earlier-picked neighbors minus the latest-picked one
    // must all be adjacent to that latest-picked neighbor.
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v.index()] = i;
    }
    for &v in order.iter().rev() {
        let mut earlier: Vec<VertexId> = g
            .siblings_of(v)
            .iter()
            .copied()
            .filter(|&u| pos[u.index()] < pos[v.index()])
            .collect();
        if earlier.len() <= 1 {
            continue;
        }
        earlier.sort_unstable_by_key(|&u| pos[u.index()]);
        let pivot = *earlier.last().unwrap();
        for &u in &earlier[..earlier.len() - 1] {
            if !g.siblings_of(pivot).contains(&u) {
                return false;
            }
        }
    }
    true
}
