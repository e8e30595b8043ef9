//! Reproducible benchmark instances: uniform and scale-free random PDAGs,
//! chordal graphs via random subtree intersection, and the adversarial
//! family on which the degree heuristic degenerates.
//!
//! All generators draw from `Xoshiro256**` seeded through SplitMix64
//! (`seed_from_u64`), so a config reproduces the same instance everywhere.

use crate::graph::{Dag, Pdag, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256StarStar};
use rustc_hash::FxHashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRule {
    ThreeN,
    FiveN,
    NLogN,
    NSqrtN,
    Explicit(usize),
}

impl EdgeRule {
    /// Target edge count for `n` vertices. The log and square-root rules
    /// round the factor up to an integer.
    pub fn edge_count(self, n: usize) -> usize {
        match self {
            EdgeRule::ThreeN => 3 * n,
            EdgeRule::FiveN => 5 * n,
            EdgeRule::NLogN => n * ceil_log2(n),
            EdgeRule::NSqrtN => n * ceil_sqrt(n),
            EdgeRule::Explicit(m) => m,
        }
    }
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

fn ceil_sqrt(n: usize) -> usize {
    let r = n.isqrt();
    if r * r < n {
        r + 1
    } else {
        r
    }
}

impl std::str::FromStr for EdgeRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "3n" => Ok(EdgeRule::ThreeN),
            "5n" => Ok(EdgeRule::FiveN),
            "nlogn" => Ok(EdgeRule::NLogN),
            "nsqrtn" => Ok(EdgeRule::NSqrtN),
            other => other
                .parse()
                .map(EdgeRule::Explicit)
                .map_err(|_| format!("unknown edge rule `{other}`")),
        }
    }
}

impl std::fmt::Display for EdgeRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeRule::ThreeN => f.write_str("3n"),
            EdgeRule::FiveN => f.write_str("5n"),
            EdgeRule::NLogN => f.write_str("nlogn"),
            EdgeRule::NSqrtN => f.write_str("nsqrtn"),
            EdgeRule::Explicit(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphStyle {
    Uniform,
    ScaleFree,
    Chordal,
    DthWorstCase,
}

impl std::str::FromStr for GraphStyle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(GraphStyle::Uniform),
            "scale_free" | "scale-free" => Ok(GraphStyle::ScaleFree),
            "chordal" => Ok(GraphStyle::Chordal),
            "dth_worst_case" | "dth-worst-case" => Ok(GraphStyle::DthWorstCase),
            other => Err(format!("unknown graph style `{other}`")),
        }
    }
}

impl std::fmt::Display for GraphStyle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GraphStyle::Uniform => "uniform",
            GraphStyle::ScaleFree => "scale_free",
            GraphStyle::Chordal => "chordal",
            GraphStyle::DthWorstCase => "dth_worst_case",
        };
        f.write_str(s)
    }
}

/// Parameters of one reproducible instance. Identical configs produce
/// byte-identical edge lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub edge_rule: EdgeRule,
    pub style: GraphStyle,
    /// Chordal subtree-size / worst-case scale parameter.
    pub k: usize,
    pub seed: u64,
    /// Inclusive range for the number of extra background arcs kept in step
    /// (iii) of random PDAG generation.
    pub background_arcs: (u32, u32),
}

impl GeneratorConfig {
    pub fn new(n: usize, edge_rule: EdgeRule, style: GraphStyle, seed: u64) -> Self {
        GeneratorConfig {
            n,
            edge_rule,
            style,
            k: 3,
            seed,
            background_arcs: (2, 5),
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_background_arcs(mut self, lo: u32, hi: u32) -> Self {
        self.background_arcs = (lo, hi);
        self
    }

    /// Key=value rendering used in suite files and generated file headers.
    pub fn describe(&self) -> String {
        format!(
            "n={} edges={} style={} k={} seed={} background_arcs={}..{}",
            self.n,
            self.edge_rule,
            self.style,
            self.k,
            self.seed,
            self.background_arcs.0,
            self.background_arcs.1
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("edge count {m} out of range for {n} vertices (max {max})")]
    EdgeCountOutOfRange { m: usize, n: usize, max: usize },
    #[error("{0}")]
    BadParams(String),
}

fn check_edge_count(n: usize, m: usize) -> Result<(), GenError> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(GenError::EdgeCountOutOfRange { m, n, max });
    }
    Ok(())
}

/// Dispatches on `cfg.style`.
pub fn generate(cfg: &GeneratorConfig) -> Result<Pdag, GenError> {
    match cfg.style {
        GraphStyle::Uniform | GraphStyle::ScaleFree => random_pdag(cfg),
        GraphStyle::Chordal => chordal_graph(cfg),
        GraphStyle::DthWorstCase => {
            if cfg.k == 0 {
                return Err(GenError::BadParams("dth_worst_case needs k >= 1".into()));
            }
            Ok(dth_worst_case(cfg.k))
        }
    }
}

/// Extendable random PDAG: orient a random undirected graph by a random
/// vertex permutation into a DAG `D`, keep only the arcs participating in a
/// v-structure of `D`, then re-orient a few randomly chosen undirected edges
/// according to `D` as background knowledge.
pub fn random_pdag(cfg: &GeneratorConfig) -> Result<Pdag, GenError> {
    random_pdag_with_witness(cfg).map(|(g, _)| g)
}

/// [`random_pdag`] plus the hidden DAG, which witnesses extendability.
pub fn random_pdag_with_witness(cfg: &GeneratorConfig) -> Result<(Pdag, Dag), GenError> {
    if cfg.n == 0 {
        return Err(GenError::BadParams("need at least one vertex".into()));
    }
    if cfg.background_arcs.0 > cfg.background_arcs.1 {
        return Err(GenError::BadParams(
            "background_arcs range is reversed".into(),
        ));
    }
    let n = cfg.n;
    let m = cfg.edge_rule.edge_count(n);
    check_edge_count(n, m)?;
    let mut rng = Xoshiro256StarStar::seed_from_u64(cfg.seed);

    let edges = match cfg.style {
        GraphStyle::Uniform => uniform_edges(n, m, &mut rng),
        GraphStyle::ScaleFree => scale_free_edges(n, m, &mut rng),
        other => {
            return Err(GenError::BadParams(format!(
                "random_pdag does not handle style {other}"
            )))
        }
    };

    // random permutation as the topological ordering of D
    let mut perm: Vec<VertexId> = (0..n as u32).map(VertexId).collect();
    perm.shuffle(&mut rng);
    let mut rank = vec![0usize; n];
    for (i, &v) in perm.iter().enumerate() {
        rank[v.index()] = i;
    }
    let arcs: Vec<(VertexId, VertexId)> = edges
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (VertexId(a), VertexId(b));
            if rank[a.index()] < rank[b.index()] {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    let mut d = Pdag::new(n);
    for &(u, v) in &arcs {
        d.add_arc(u, v).expect("sampled edges are simple");
    }
    let witness = Dag::from_extension(d, perm);

    // arcs stay directed iff they participate in a v-structure of D
    let skeleton: FxHashSet<(VertexId, VertexId)> = edges
        .iter()
        .map(|&(a, b)| (VertexId(a), VertexId(b)))
        .collect();
    let adjacent = |a: VertexId, b: VertexId| {
        let key = if a < b { (a, b) } else { (b, a) };
        skeleton.contains(&key)
    };
    let mut kept: Vec<(VertexId, VertexId)> = Vec::new();
    let mut free: Vec<(VertexId, VertexId)> = Vec::new();
    for &(u, v) in &arcs {
        let in_v_structure = witness
            .parents_of(v)
            .iter()
            .any(|&w| w != u && !adjacent(w, u));
        if in_v_structure {
            kept.push((u, v));
        } else {
            free.push((u, v));
        }
    }

    // background knowledge: orient a few more edges the way D does
    let lo = cfg.background_arcs.0 as usize;
    let hi = cfg.background_arcs.1 as usize;
    let t = rng.random_range(lo..=hi).min(free.len());
    for i in 0..t {
        let j = rng.random_range(i..free.len());
        free.swap(i, j);
    }

    let mut out = Pdag::new(n);
    for &(u, v) in kept.iter().chain(&free[..t]) {
        out.add_arc(u, v).expect("sampled edges are simple");
    }
    for &(u, v) in &free[t..] {
        out.add_undirected(u, v).expect("sampled edges are simple");
    }
    Ok((out, witness))
}

/// `m` distinct unordered pairs sampled uniformly, as `(a, b)` with `a < b`.
fn uniform_edges(n: usize, m: usize, rng: &mut Xoshiro256StarStar) -> Vec<(u32, u32)> {
    let mut seen: FxHashSet<(u32, u32)> = FxHashSet::default();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let a = rng.random_range(0..n as u32);
        let b = rng.random_range(0..n as u32);
        if a == b {
            continue;
        }
        let e = (a.min(b), a.max(b));
        if seen.insert(e) {
            edges.push(e);
        }
    }
    edges
}

/// Barabasi-Albert preferential attachment with `ceil(m / n)` edges per new
/// vertex, padded or trimmed uniformly to exactly `m` edges.
fn scale_free_edges(n: usize, m: usize, rng: &mut Xoshiro256StarStar) -> Vec<(u32, u32)> {
    if n <= 1 || m == 0 {
        return Vec::new();
    }
    let per_vertex = m.div_ceil(n).max(1);
    let mut endpoints: Vec<u32> = Vec::with_capacity(4 * m);
    let mut seen: FxHashSet<(u32, u32)> = FxHashSet::default();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for vtx in 1..n as u32 {
        let want = per_vertex.min(vtx as usize);
        let mut chosen: Vec<u32> = Vec::with_capacity(want);
        while chosen.len() < want {
            let t = if endpoints.is_empty() {
                rng.random_range(0..vtx)
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        chosen.sort_unstable();
        for t in chosen {
            let e = (t.min(vtx), t.max(vtx));
            if seen.insert(e) {
                edges.push(e);
            }
            endpoints.push(vtx);
            endpoints.push(t);
        }
    }
    while edges.len() > m {
        let i = rng.random_range(0..edges.len());
        let e = edges.swap_remove(i);
        seen.remove(&e);
    }
    while edges.len() < m {
        let a = rng.random_range(0..n as u32);
        let b = rng.random_range(0..n as u32);
        if a == b {
            continue;
        }
        let e = (a.min(b), a.max(b));
        if seen.insert(e) {
            edges.push(e);
        }
    }
    edges
}

/// Fully undirected chordal graph by random subtree intersection: grow one
/// random subtree per vertex in a uniform random tree; vertices are adjacent
/// iff their subtrees share a node. Subtree sizes are geometric with mean
/// `k`, clamped to `[1, n]`; `k >= n` forces spanning subtrees.
pub fn chordal_graph(cfg: &GeneratorConfig) -> Result<Pdag, GenError> {
    if cfg.n == 0 {
        return Err(GenError::BadParams("need at least one vertex".into()));
    }
    if cfg.k == 0 {
        return Err(GenError::BadParams("chordal generation needs k >= 1".into()));
    }
    let n = cfg.n;
    let mut rng = Xoshiro256StarStar::seed_from_u64(cfg.seed);
    let tree = random_tree(n, &mut rng);

    let mut owners: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut in_sub = vec![false; n];
    let mut frontier: Vec<u32> = Vec::new();
    for i in 0..n as u32 {
        let target = subtree_size(cfg.k, n, &mut rng);
        let root = rng.random_range(0..n as u32);
        let mut members = vec![root];
        in_sub[root as usize] = true;
        frontier.clear();
        frontier.extend(&tree[root as usize]);
        while members.len() < target && !frontier.is_empty() {
            let idx = rng.random_range(0..frontier.len());
            let x = frontier.swap_remove(idx);
            if in_sub[x as usize] {
                continue;
            }
            in_sub[x as usize] = true;
            members.push(x);
            for &y in &tree[x as usize] {
                if !in_sub[y as usize] {
                    frontier.push(y);
                }
            }
        }
        for &x in &members {
            owners[x as usize].push(i);
            in_sub[x as usize] = false;
        }
    }

    let mut g = Pdag::new(n);
    let mut seen: FxHashSet<(u32, u32)> = FxHashSet::default();
    for node_owners in &owners {
        for (a_pos, &a) in node_owners.iter().enumerate() {
            for &b in &node_owners[a_pos + 1..] {
                let e = (a.min(b), a.max(b));
                if seen.insert(e) {
                    g.add_undirected(VertexId(e.0), VertexId(e.1))
                        .expect("intersection pairs are simple");
                }
            }
        }
    }
    Ok(g)
}

/// Trials-until-success geometric sample with mean about `k`, capped at `n`.
/// Integer thresholding keeps the draw platform-independent.
fn subtree_size(k: usize, n: usize, rng: &mut Xoshiro256StarStar) -> usize {
    if k >= n {
        return n;
    }
    let threshold = u64::MAX / k as u64;
    let mut size = 1;
    while size < n && rng.next_u64() >= threshold {
        size += 1;
    }
    size
}

/// Uniform random labeled tree from a Prüfer sequence.
fn random_tree(n: usize, rng: &mut Xoshiro256StarStar) -> Vec<Vec<u32>> {
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let connect = |a: u32, b: u32, adj: &mut Vec<Vec<u32>>| {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    };
    match n {
        0 | 1 => return adj,
        2 => {
            connect(0, 1, &mut adj);
            return adj;
        }
        _ => {}
    }
    let seq: Vec<u32> = (0..n - 2).map(|_| rng.random_range(0..n as u32)).collect();
    let mut degree = vec![1u32; n];
    for &s in &seq {
        degree[s as usize] += 1;
    }
    let mut leaves: std::collections::BTreeSet<u32> = (0..n as u32)
        .filter(|&v| degree[v as usize] == 1)
        .collect();
    for &s in &seq {
        let leaf = *leaves.iter().next().expect("a tree always has a leaf");
        leaves.remove(&leaf);
        connect(leaf, s, &mut adj);
        degree[s as usize] -= 1;
        if degree[s as usize] == 1 {
            leaves.insert(s);
        }
    }
    let mut rest = leaves.into_iter();
    let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
    connect(a, b, &mut adj);
    adj
}

/// The family from the degree-heuristic lower bound: cliques `C_v`, `C_w` of
/// `2k` vertices and `C_vw` of `k` vertices, with `v` joined to `C_v` and
/// `C_vw`, `w` joined to `C_w` and `C_vw`, and `v`, `w` non-adjacent.
/// Vertices `v = 5k` and `w = 5k + 1` carry the highest ids so the sorted
/// pair scan of a `C_vw` vertex reaches the single violating pair last.
pub fn dth_worst_case(k: usize) -> Pdag {
    assert!(k >= 1, "dth_worst_case needs k >= 1");
    let n = 5 * k + 2;
    let mut g = Pdag::new(n);
    let v = VertexId((5 * k) as u32);
    let w = VertexId((5 * k + 1) as u32);
    let clique = |g: &mut Pdag, lo: usize, hi: usize| {
        for a in lo..hi {
            for b in a + 1..hi {
                g.add_undirected(VertexId(a as u32), VertexId(b as u32))
                    .expect("clique pairs are simple");
            }
        }
    };
    clique(&mut g, 0, 2 * k); // C_v
    clique(&mut g, 2 * k, 4 * k); // C_w
    clique(&mut g, 4 * k, 5 * k); // C_vw
    for x in (0..2 * k).chain(4 * k..5 * k) {
        g.add_undirected(v, VertexId(x as u32)).expect("simple");
    }
    for x in (2 * k..4 * k).chain(4 * k..5 * k) {
        g.add_undirected(w, VertexId(x as u32)).expect("simple");
    }
    g
}

/// Closed-form edge count of [`dth_worst_case`].
pub fn dth_worst_case_edge_count(k: usize) -> usize {
    2 * (2 * k) * (2 * k - 1) / 2 + k * (k - 1) / 2 + 2 * (2 * k + k)
}

/// Per-instance seeds derived from a base seed via a SplitMix64 stream.
pub fn instance_seeds(base: u64, count: usize) -> Vec<u64> {
    let mut mix = SplitMix64::seed_from_u64(base);
    (0..count).map(|_| mix.next_u64()).collect()
}
