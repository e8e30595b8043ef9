//! Maximal orientation: close a PDAG under the four Meek rules, either
//! directly or through the extension pipeline (extend, DAG-to-CPDAG, then a
//! seeded Meek pass in topological order).

use crate::extension::{
    orientation_is_valid, skeleton_pairs, CandidateScratch, ExtensionAlgo, ExtensionOutcome,
    GuardError, ENUMERATION_GUARD,
};
use crate::graph::{sorted, Dag, EdgeKind, Pdag, VertexId};
use rustc_hash::{FxHashMap, FxHashSet};
use std::collections::VecDeque;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeekRule {
    R1,
    R2,
    R3,
    R4,
}

impl std::fmt::Display for MeekRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k = match self {
            MeekRule::R1 => 1,
            MeekRule::R2 => 2,
            MeekRule::R3 => 3,
            MeekRule::R4 => 4,
        };
        write!(f, "R{k}")
    }
}

/// One rule firing: the edge it oriented plus the 1-2 vertices completing
/// the pattern, all present in the graph state just before the application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: MeekRule,
    pub from: VertexId,
    pub to: VertexId,
    pub witnesses: Vec<VertexId>,
}

impl std::fmt::Display for RuleApplication {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ids: Vec<String> = self.witnesses.iter().map(|w| w.to_string()).collect();
        write!(
            f,
            "{} {}->{} witnesses: {}",
            self.rule,
            self.from,
            self.to,
            ids.join(" ")
        )
    }
}

/// Replayable record of a fixpoint computation.
#[derive(Debug, Clone)]
pub struct OrientationTrace {
    pub initial_hash: u64,
    pub applications: Vec<RuleApplication>,
    /// How often the busiest worklist edge was re-enqueued; an observable for
    /// how far the seeded pass is from single-pass sufficiency.
    pub max_edge_requeues: usize,
}

impl OrientationTrace {
    fn new(initial: &Pdag) -> Self {
        OrientationTrace {
            initial_hash: initial.canonical_hash(),
            applications: Vec::new(),
            max_edge_requeues: 0,
        }
    }

    /// Re-applies the recorded orientations to a copy of the initial graph.
    pub fn replay(&self, initial: &Pdag) -> Result<Pdag, crate::graph::GraphError> {
        assert_eq!(
            initial.canonical_hash(),
            self.initial_hash,
            "trace replayed against a different graph"
        );
        let mut g = initial.clone();
        for app in &self.applications {
            g.orient(app.from, app.to)?;
        }
        Ok(g)
    }

    /// One line per application: `R<k> <from>-><to> witnesses: <ids>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for app in &self.applications {
            out.push_str(&app.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrientError {
    #[error("input PDAG is not extendable: {0}")]
    InvalidInput(String),
}

/// R1: some parent of `u` is non-adjacent to `v`, so `v <- u` would create a
/// new v-structure; orient `u -> v`.
fn try_r1(g: &Pdag, u: VertexId, v: VertexId) -> Option<RuleApplication> {
    for a in sorted(g.parents_of(u)) {
        if !g.adjacent(a, v) {
            return Some(RuleApplication {
                rule: MeekRule::R1,
                from: u,
                to: v,
                witnesses: vec![a],
            });
        }
    }
    None
}

/// R2: a directed path `u -> w -> v` exists, so `v -> u` would close a
/// cycle; orient `u -> v`.
fn try_r2(g: &Pdag, u: VertexId, v: VertexId) -> Option<RuleApplication> {
    for w in sorted(g.children_of(u)) {
        if g.adjacency(w, v) == EdgeKind::ArcForward {
            return Some(RuleApplication {
                rule: MeekRule::R2,
                from: u,
                to: v,
                witnesses: vec![w],
            });
        }
    }
    None
}

/// R3: two non-adjacent siblings of `u` both point at `v`; orient `u -> v`.
fn try_r3(g: &Pdag, u: VertexId, v: VertexId) -> Option<RuleApplication> {
    let mut pointing: Vec<VertexId> = Vec::new();
    for x in sorted(g.siblings_of(u)) {
        if x != v && g.adjacency(x, v) == EdgeKind::ArcForward {
            pointing.push(x);
        }
    }
    for i in 0..pointing.len() {
        for j in i + 1..pointing.len() {
            if !g.adjacent(pointing[i], pointing[j]) {
                return Some(RuleApplication {
                    rule: MeekRule::R3,
                    from: u,
                    to: v,
                    witnesses: vec![pointing[i], pointing[j]],
                });
            }
        }
    }
    None
}

/// R4: siblings `c, d` of `u` with `d -> c -> v` and `d` non-adjacent to
/// `v`; orient `u -> v`.
fn try_r4(g: &Pdag, u: VertexId, v: VertexId) -> Option<RuleApplication> {
    let sibs = sorted(g.siblings_of(u));
    for &c in &sibs {
        if c == v || g.adjacency(c, v) != EdgeKind::ArcForward {
            continue;
        }
        for &d in &sibs {
            if d == c || d == v {
                continue;
            }
            if g.adjacency(d, c) == EdgeKind::ArcForward && !g.adjacent(d, v) {
                return Some(RuleApplication {
                    rule: MeekRule::R4,
                    from: u,
                    to: v,
                    witnesses: vec![c, d],
                });
            }
        }
    }
    None
}

/// First rule firing on the undirected edge `{p, q}`, trying R1 through R4
/// in order and the `p -> q` direction before `q -> p` within each rule.
pub fn applicable_rule(g: &Pdag, p: VertexId, q: VertexId) -> Option<RuleApplication> {
    debug_assert_eq!(g.adjacency_uncounted(p, q), EdgeKind::Undirected);
    type Matcher = fn(&Pdag, VertexId, VertexId) -> Option<RuleApplication>;
    let matchers: [Matcher; 4] = [try_r1, try_r2, try_r3, try_r4];
    for m in matchers {
        if let Some(app) = m(g, p, q) {
            return Some(app);
        }
        if let Some(app) = m(g, q, p) {
            return Some(app);
        }
    }
    None
}

/// Exhaustive pattern scan over all undirected edges; `None` means the graph
/// is a Meek fixpoint.
pub fn any_applicable_rule(g: &Pdag) -> Option<RuleApplication> {
    g.undirected_edges()
        .into_iter()
        .find_map(|(p, q)| applicable_rule(g, p, q))
}

/// Worklist closure engine. Orienting an edge re-enqueues the undirected
/// edges at both endpoints; because an R4 premise arc can sit one step away
/// from the edge it unlocks, the drained worklist is followed by full
/// verification scans until one is clean, which guarantees the fixpoint.
struct MeekEngine {
    work: Pdag,
    trace: OrientationTrace,
    queue: VecDeque<(VertexId, VertexId)>,
    queued: FxHashSet<(VertexId, VertexId)>,
    enqueue_counts: FxHashMap<(VertexId, VertexId), usize>,
}

fn norm(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl MeekEngine {
    fn new(work: Pdag, trace: OrientationTrace) -> Self {
        MeekEngine {
            work,
            trace,
            queue: VecDeque::new(),
            queued: FxHashSet::default(),
            enqueue_counts: FxHashMap::default(),
        }
    }

    fn enqueue(&mut self, e: (VertexId, VertexId)) {
        if self.queued.insert(e) {
            self.queue.push_back(e);
            *self.enqueue_counts.entry(e).or_insert(0) += 1;
        }
    }

    fn apply(&mut self, app: RuleApplication) {
        self.work
            .orient(app.from, app.to)
            .expect("matched pattern orients an undirected edge");
        for endpoint in [app.from, app.to] {
            for s in sorted(self.work.siblings_of(endpoint)) {
                self.enqueue(norm(endpoint, s));
            }
        }
        self.trace.applications.push(app);
    }

    fn run_worklist(&mut self) {
        while let Some(e) = self.queue.pop_front() {
            self.queued.remove(&e);
            if self.work.adjacency_uncounted(e.0, e.1) != EdgeKind::Undirected {
                continue;
            }
            if let Some(app) = applicable_rule(&self.work, e.0, e.1) {
                self.apply(app);
            }
        }
    }

    fn run_to_fixpoint(&mut self) {
        loop {
            self.run_worklist();
            match any_applicable_rule(&self.work) {
                Some(app) => self.apply(app),
                None => break,
            }
        }
    }

    fn finish(mut self) -> Result<(Pdag, OrientationTrace), OrientError> {
        if let Some(cycle) = self.work.find_directed_cycle() {
            return Err(OrientError::InvalidInput(format!(
                "Meek closure created a directed cycle through {}",
                cycle
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" -> ")
            )));
        }
        self.trace.max_edge_requeues = self
            .enqueue_counts
            .values()
            .map(|&c| c.saturating_sub(1))
            .max()
            .unwrap_or(0);
        Ok((self.work, self.trace))
    }
}

/// Unique fixpoint of the four Meek rules, computed with the worklist
/// engine. The input must be extendable; a closure that produces a directed
/// cycle reports `InvalidInput`.
pub fn direct_meek(g: &Pdag) -> Result<(Pdag, OrientationTrace), OrientError> {
    let mut eng = MeekEngine::new(g.working_copy(), OrientationTrace::new(g));
    for (p, q) in g.undirected_edges() {
        let near_arc = !g.parents_of(p).is_empty()
            || !g.children_of(p).is_empty()
            || !g.parents_of(q).is_empty()
            || !g.children_of(q).is_empty();
        if near_arc {
            eng.enqueue((p, q));
        }
    }
    eng.run_to_fixpoint();
    eng.finish()
}

/// The textbook baseline, the direct way of common causal-discovery
/// packages: every pass sweeps all ordered vertex pairs once per rule,
/// probing the pair relation matrix-style and applying the rule wherever it
/// fires, until a whole pass changes nothing. No candidate bookkeeping
/// survives between passes. Same fixpoint as [`direct_meek`].
pub fn direct_meek_naive(g: &Pdag) -> Result<(Pdag, OrientationTrace), OrientError> {
    let mut work = g.working_copy();
    let mut trace = OrientationTrace::new(g);
    type Matcher = fn(&Pdag, VertexId, VertexId) -> Option<RuleApplication>;
    let matchers: [Matcher; 4] = [try_r1, try_r2, try_r3, try_r4];
    let vertices: Vec<VertexId> = work.alive_vertices().collect();
    loop {
        let mut applied = false;
        for matcher in matchers {
            for &a in &vertices {
                for &b in &vertices {
                    if a == b || work.adjacency(a, b) != EdgeKind::Undirected {
                        continue;
                    }
                    if let Some(app) = matcher(&work, a, b) {
                        work.orient(app.from, app.to)
                            .expect("matched pattern orients an undirected edge");
                        trace.applications.push(app);
                        applied = true;
                    }
                }
            }
        }
        if !applied {
            break;
        }
    }
    if let Some(cycle) = work.find_directed_cycle() {
        return Err(OrientError::InvalidInput(format!(
            "Meek closure created a directed cycle through {}",
            cycle
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" -> ")
        )));
    }
    Ok((work, trace))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Unknown,
    Compelled,
    Reversible,
}

/// CPDAG of `d`'s Markov equivalence class via compelled-edge labeling over
/// a topologically ordered edge sequence: an arc stays directed iff it has
/// the same orientation in every DAG with `d`'s skeleton and v-structures.
pub fn dag_to_cpdag(d: &Dag) -> Pdag {
    let g = d.as_pdag();
    let topo = d.topological_order();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in topo.iter().enumerate() {
        pos[v.index()] = i;
    }
    // Edge order: ascending head position, descending tail position.
    let mut edges = g.arcs();
    edges.sort_unstable_by_key(|&(x, y)| (pos[y.index()], std::cmp::Reverse(pos[x.index()])));
    let mut label = vec![Label::Unknown; edges.len()];
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    let mut index: FxHashMap<(VertexId, VertexId), usize> = FxHashMap::default();
    for (i, &(x, y)) in edges.iter().enumerate() {
        incoming[y.index()].push(i);
        index.insert((x, y), i);
    }
    for i in 0..edges.len() {
        if label[i] != Label::Unknown {
            continue;
        }
        let (x, y) = edges[i];
        let mut compelled_all = false;
        for &j in &incoming[x.index()] {
            if label[j] != Label::Compelled {
                continue;
            }
            let w = edges[j].0;
            if !g.parents_of(y).contains(&w) {
                for &e in &incoming[y.index()] {
                    label[e] = Label::Compelled;
                }
                compelled_all = true;
                break;
            }
            label[index[&(w, y)]] = Label::Compelled;
        }
        if compelled_all {
            continue;
        }
        let has_external_parent = g
            .parents_of(y)
            .iter()
            .any(|&z| z != x && !g.parents_of(x).contains(&z));
        let lab = if has_external_parent {
            Label::Compelled
        } else {
            Label::Reversible
        };
        for &e in &incoming[y.index()] {
            if label[e] == Label::Unknown {
                label[e] = lab;
            }
        }
    }
    let mut out = g.same_shape();
    for (i, &(x, y)) in edges.iter().enumerate() {
        match label[i] {
            Label::Compelled => out.add_arc(x, y).expect("edges are simple"),
            Label::Reversible => out.add_undirected(x, y).expect("edges are simple"),
            Label::Unknown => unreachable!("labeling pass covers every edge"),
        }
    }
    out
}

/// Brute-force CPDAG oracle: enumerates every orientation of `d`'s skeleton,
/// keeps those that are acyclic with identical v-structures, and directs an
/// edge iff all survivors orient it the same way.
pub fn brute_force_cpdag(d: &Dag) -> Result<Pdag, GuardError> {
    let g = d.as_pdag();
    let skeleton_edges: Vec<(VertexId, VertexId)> = g
        .arcs()
        .into_iter()
        .map(|(u, v)| norm(u, v))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    if skeleton_edges.len() > ENUMERATION_GUARD {
        return Err(GuardError {
            actual: skeleton_edges.len(),
            limit: ENUMERATION_GUARD,
        });
    }
    let expected = g.v_structures();
    let skeleton = skeleton_pairs(g);
    let mut scratch = CandidateScratch::new(g.n());
    // per-edge orientation bits across survivors: bit 0 = as listed, bit 1 = flipped
    let mut seen = vec![0u8; skeleton_edges.len()];
    let mut survivors = 0usize;
    for mask in 0..(1u64 << skeleton_edges.len()) {
        if orientation_is_valid(g, &[], &skeleton_edges, mask, &mut scratch, &skeleton, &expected)
        {
            survivors += 1;
            for (i, bit) in seen.iter_mut().enumerate() {
                *bit |= if mask & (1 << i) == 0 { 1 } else { 2 };
            }
        }
    }
    debug_assert!(survivors >= 1, "the input DAG itself always survives");
    let mut out = g.same_shape();
    for (i, &(u, v)) in skeleton_edges.iter().enumerate() {
        match seen[i] {
            1 => out.add_arc(u, v).expect("edges are simple"),
            2 => out.add_arc(v, u).expect("edges are simple"),
            3 => out.add_undirected(u, v).expect("edges are simple"),
            _ => unreachable!("every edge occurs in at least one survivor"),
        }
    }
    Ok(out)
}

/// Brute-force MPDAG oracle: an undirected edge of `g` becomes directed iff
/// it is oriented identically in every enumerated consistent extension.
/// Returns `None` when `g` has no consistent extension.
pub fn brute_force_mpdag(g: &Pdag) -> Result<Option<Pdag>, GuardError> {
    let und = g.undirected_edges();
    if und.len() > ENUMERATION_GUARD {
        return Err(GuardError {
            actual: und.len(),
            limit: ENUMERATION_GUARD,
        });
    }
    let arcs = g.arcs();
    let expected = g.v_structures();
    let skeleton = skeleton_pairs(g);
    let mut scratch = CandidateScratch::new(g.n());
    let mut seen = vec![0u8; und.len()];
    let mut survivors = 0usize;
    for mask in 0..(1u64 << und.len()) {
        if orientation_is_valid(g, &arcs, &und, mask, &mut scratch, &skeleton, &expected) {
            survivors += 1;
            for (i, bit) in seen.iter_mut().enumerate() {
                *bit |= if mask & (1 << i) == 0 { 1 } else { 2 };
            }
        }
    }
    if survivors == 0 {
        return Ok(None);
    }
    let mut out = g.same_shape();
    for &(u, v) in &arcs {
        out.add_arc(u, v).expect("edges are simple");
    }
    for (i, &(u, v)) in und.iter().enumerate() {
        match seen[i] {
            1 => out.add_arc(u, v).expect("edges are simple"),
            2 => out.add_arc(v, u).expect("edges are simple"),
            3 => out.add_undirected(u, v).expect("edges are simple"),
            _ => unreachable!("every edge occurs in at least one survivor"),
        }
    }
    Ok(Some(out))
}

/// Wall-clock split of the extension pipeline, nanosecond-resolution
/// monotonic clock, reported in microseconds.
#[derive(Debug, Clone, Copy, Default)]
pub struct PhaseTimings {
    pub extension: Duration,
    pub to_cpdag: Duration,
    pub meek: Duration,
}

impl PhaseTimings {
    pub fn extension_us(&self) -> u64 {
        self.extension.as_micros() as u64
    }

    pub fn to_cpdag_us(&self) -> u64 {
        self.to_cpdag.as_micros() as u64
    }

    pub fn meek_us(&self) -> u64 {
        self.meek.as_micros() as u64
    }

    pub fn total(&self) -> Duration {
        self.extension + self.to_cpdag + self.meek
    }
}

/// Maximal orientation through the extension pipeline: (i) extend, (ii)
/// DAG-to-CPDAG, (iii) re-orient the edges directed in `g` and close under
/// the Meek rules, seeded only from those arcs and processed in topological
/// order of the extension. Equals [`direct_meek`] on every extendable input.
pub fn maximal_orientation_ce(
    g: &Pdag,
    extender: ExtensionAlgo,
) -> Result<(Pdag, PhaseTimings), OrientError> {
    let start = Instant::now();
    let outcome = extender.run(g);
    let extension = start.elapsed();
    let ExtensionOutcome::Extended { dag, .. } = outcome else {
        return Err(OrientError::InvalidInput(
            "extension phase found no consistent extension".into(),
        ));
    };

    let start = Instant::now();
    let cpdag = dag_to_cpdag(&dag);
    let to_cpdag = start.elapsed();

    let start = Instant::now();
    let mut out = cpdag;
    let mut seeds: Vec<(VertexId, VertexId)> = Vec::new();
    for (u, v) in g.arcs() {
        match out.adjacency_uncounted(u, v) {
            EdgeKind::ArcForward => {}
            EdgeKind::Undirected => {
                out.orient(u, v).expect("edge verified undirected");
                seeds.push((u, v));
            }
            other => unreachable!(
                "CPDAG contradicts input arc {u}->{v} ({other:?}); extension or labeling bug"
            ),
        }
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in dag.topological_order().iter().enumerate() {
        pos[v.index()] = i;
    }
    let mut candidates: Vec<(VertexId, VertexId)> = Vec::new();
    for &(u, v) in &seeds {
        for endpoint in [u, v] {
            for s in sorted(out.siblings_of(endpoint)) {
                candidates.push(norm(endpoint, s));
            }
        }
    }
    candidates.sort_unstable_by_key(|&(a, b)| {
        let (pa, pb) = (pos[a.index()], pos[b.index()]);
        (pa.min(pb), pa.max(pb), a, b)
    });
    candidates.dedup();
    let mut eng = MeekEngine::new(out, OrientationTrace::new(g));
    for e in candidates {
        eng.enqueue(e);
    }
    eng.run_to_fixpoint();
    let (result, _trace) = eng.finish()?;
    let meek = start.elapsed();

    #[cfg(debug_assertions)]
    if g.n() <= 512 {
        let (direct, _) = direct_meek(g)?;
        assert_eq!(
            result, direct,
            "extension pipeline diverged from the direct Meek fixpoint"
        );
    }

    Ok((
        result,
        PhaseTimings {
            extension,
            to_cpdag,
            meek,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{extend_dt, is_consistent_extension};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn fig1_g() -> Pdag {
        let mut g = Pdag::new(5);
        g.add_undirected(v(0), v(1)).unwrap();
        g.add_undirected(v(0), v(2)).unwrap();
        g.add_arc(v(1), v(3)).unwrap();
        g.add_arc(v(2), v(3)).unwrap();
        g.add_undirected(v(3), v(4)).unwrap();
        g.add_undirected(v(0), v(3)).unwrap();
        g
    }

    fn fig1_m() -> Pdag {
        let mut m = Pdag::new(5);
        m.add_undirected(v(0), v(1)).unwrap();
        m.add_undirected(v(0), v(2)).unwrap();
        m.add_arc(v(1), v(3)).unwrap();
        m.add_arc(v(2), v(3)).unwrap();
        m.add_arc(v(3), v(4)).unwrap();
        m.add_arc(v(0), v(3)).unwrap();
        m
    }

    fn fig1_d() -> Dag {
        let mut d = Pdag::new(5);
        d.add_arc(v(0), v(1)).unwrap();
        d.add_arc(v(0), v(2)).unwrap();
        d.add_arc(v(1), v(3)).unwrap();
        d.add_arc(v(2), v(3)).unwrap();
        d.add_arc(v(3), v(4)).unwrap();
        d.add_arc(v(0), v(3)).unwrap();
        Dag::try_from_pdag(d).unwrap()
    }

    #[test]
    fn direct_meek_fig1_reaches_m() {
        let g = fig1_g();
        let (out, trace) = direct_meek(&g).unwrap();
        assert_eq!(out, fig1_m());
        // d -> e by R1, a -> d by R3; a -- b and a -- c stay undirected
        assert_eq!(trace.applications.len(), 2);
        assert_eq!(trace.replay(&g).unwrap(), out);
        assert!(any_applicable_rule(&out).is_none());

        let (naive, _) = direct_meek_naive(&g).unwrap();
        assert_eq!(naive, fig1_m());

        // idempotence
        let (again, trace2) = direct_meek(&out).unwrap();
        assert_eq!(again, out);
        assert!(trace2.applications.is_empty());
    }

    #[test]
    fn meek_rules_fire_on_their_patterns() {
        // R1: a->b, b--c, a !~ c  =>  b->c
        let mut g = Pdag::new(3);
        g.add_arc(v(0), v(1)).unwrap();
        g.add_undirected(v(1), v(2)).unwrap();
        let (out, trace) = direct_meek(&g).unwrap();
        assert_eq!(out.adjacency(v(1), v(2)), EdgeKind::ArcForward);
        assert_eq!(trace.applications.len(), 1);
        assert_eq!(trace.applications[0].rule, MeekRule::R1);

        // R2: a->b->c, a--c  =>  a->c
        let mut g = Pdag::new(3);
        g.add_arc(v(0), v(1)).unwrap();
        g.add_arc(v(1), v(2)).unwrap();
        g.add_undirected(v(0), v(2)).unwrap();
        let (out, trace) = direct_meek(&g).unwrap();
        assert_eq!(out.adjacency(v(0), v(2)), EdgeKind::ArcForward);
        assert_eq!(trace.applications.len(), 1);
        assert_eq!(trace.applications[0].rule, MeekRule::R2);

        // R3: a--b, a--c, a--d, b->c, d->c, b !~ d  =>  a->c
        let mut g = Pdag::new(4);
        g.add_undirected(v(0), v(1)).unwrap();
        g.add_undirected(v(0), v(2)).unwrap();
        g.add_undirected(v(0), v(3)).unwrap();
        g.add_arc(v(1), v(2)).unwrap();
        g.add_arc(v(3), v(2)).unwrap();
        let (out, trace) = direct_meek(&g).unwrap();
        assert_eq!(out.adjacency(v(0), v(2)), EdgeKind::ArcForward);
        assert_eq!(out.adjacency(v(0), v(1)), EdgeKind::Undirected);
        assert_eq!(out.adjacency(v(0), v(3)), EdgeKind::Undirected);
        assert_eq!(trace.applications.len(), 1);
        assert_eq!(trace.applications[0].rule, MeekRule::R3);

        // R4: a--b, a--c, a--d, d->c, c->b, b !~ d  =>  a->b
        let mut g = Pdag::new(4);
        g.add_undirected(v(0), v(1)).unwrap();
        g.add_undirected(v(0), v(2)).unwrap();
        g.add_undirected(v(0), v(3)).unwrap();
        g.add_arc(v(3), v(2)).unwrap();
        g.add_arc(v(2), v(1)).unwrap();
        let (out, trace) = direct_meek(&g).unwrap();
        assert_eq!(out.adjacency(v(0), v(1)), EdgeKind::ArcForward);
        assert_eq!(out.adjacency(v(0), v(2)), EdgeKind::Undirected);
        assert_eq!(out.adjacency(v(0), v(3)), EdgeKind::Undirected);
        assert_eq!(trace.applications.len(), 1);
        assert_eq!(trace.applications[0].rule, MeekRule::R4);
    }

    #[test]
    fn fully_undirected_tree_is_a_fixpoint() {
        let mut g = Pdag::new(5);
        for (a, b) in [(0, 1), (1, 2), (1, 3), (3, 4)] {
            g.add_undirected(v(a), v(b)).unwrap();
        }
        let (out, trace) = direct_meek(&g).unwrap();
        assert_eq!(out, g);
        assert!(trace.applications.is_empty());
    }

    #[test]
    fn dag_to_cpdag_fig1() {
        let d = fig1_d();
        let c = dag_to_cpdag(&d);
        assert_eq!(c, fig1_m());
        assert_eq!(brute_force_cpdag(&d).unwrap(), fig1_m());
    }

    #[test]
    fn dag_to_cpdag_small_cases() {
        // single arc becomes undirected
        let mut g = Pdag::new(2);
        g.add_arc(v(0), v(1)).unwrap();
        let d = Dag::try_from_pdag(g).unwrap();
        let c = dag_to_cpdag(&d);
        assert_eq!(c.adjacency(v(0), v(1)), EdgeKind::Undirected);
        assert_eq!(brute_force_cpdag(&d).unwrap(), c);

        // a v-structure is invariant
        let mut g = Pdag::new(3);
        g.add_arc(v(0), v(1)).unwrap();
        g.add_arc(v(2), v(1)).unwrap();
        let d = Dag::try_from_pdag(g.clone()).unwrap();
        let c = dag_to_cpdag(&d);
        assert_eq!(c, g);
        assert_eq!(brute_force_cpdag(&d).unwrap(), c);

        // a directed path loses all orientations
        let mut g = Pdag::new(3);
        g.add_arc(v(0), v(1)).unwrap();
        g.add_arc(v(1), v(2)).unwrap();
        let d = Dag::try_from_pdag(g).unwrap();
        let c = dag_to_cpdag(&d);
        assert_eq!(c.adjacency(v(0), v(1)), EdgeKind::Undirected);
        assert_eq!(c.adjacency(v(1), v(2)), EdgeKind::Undirected);
        assert_eq!(brute_force_cpdag(&d).unwrap(), c);
    }

    #[test]
    fn mpdag_oracle_matches_direct_meek_on_fig1() {
        let g = fig1_g();
        let oracle = brute_force_mpdag(&g).unwrap().expect("extendable");
        assert_eq!(oracle, fig1_m());

        let c4 = {
            let mut g = Pdag::new(4);
            for i in 0..4u32 {
                g.add_undirected(v(i), v((i + 1) % 4)).unwrap();
            }
            g
        };
        assert_eq!(brute_force_mpdag(&c4).unwrap(), None);
    }

    #[test]
    fn pipeline_matches_direct_on_fig1() {
        let g = fig1_g();
        for algo in ExtensionAlgo::ALL {
            let (out, phases) = maximal_orientation_ce(&g, algo).unwrap();
            assert_eq!(out, fig1_m());
            assert!(phases.total() >= phases.extension);
        }
    }

    #[test]
    fn pipeline_on_a_cpdag_orients_nothing() {
        // 0 -> 1 <- 2 is its own CPDAG; no background arcs remain to seed
        let mut g = Pdag::new(3);
        g.add_arc(v(0), v(1)).unwrap();
        g.add_arc(v(2), v(1)).unwrap();
        let (out, _) = maximal_orientation_ce(&g, ExtensionAlgo::Dtic).unwrap();
        assert_eq!(out, g);

        let mut fan = Pdag::new(3);
        fan.add_arc(v(0), v(1)).unwrap();
        fan.add_arc(v(0), v(2)).unwrap();
        fan.add_undirected(v(1), v(2)).unwrap();
        // 0->1, 0->2, 1--2 is a CPDAG as well
        let (out, _) = maximal_orientation_ce(&fan, ExtensionAlgo::Dt).unwrap();
        assert_eq!(out, fan);
    }

    #[test]
    fn pipeline_rejects_non_extendable_input() {
        let mut c4 = Pdag::new(4);
        for i in 0..4u32 {
            c4.add_undirected(v(i), v((i + 1) % 4)).unwrap();
        }
        assert!(matches!(
            maximal_orientation_ce(&c4, ExtensionAlgo::Dtic),
            Err(OrientError::InvalidInput(_))
        ));
    }

    #[test]
    fn extension_of_fig1_is_consistent() {
        let g = fig1_g();
        let ExtensionOutcome::Extended { dag, .. } = extend_dt(&g) else {
            panic!("extendable");
        };
        assert!(is_consistent_extension(&g, &dag));
        assert_eq!(dag_to_cpdag(&fig1_d()), fig1_m());
    }
}
