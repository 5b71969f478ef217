//! Weighted undirected graphs, vertex sets, partitions and the structural
//! operations (cut weight, components, contraction, flow subtraction) the
//! rest of the crate builds on.
//!
//! Vertices are dense ids `0..n`. Edges are stored once per unordered pair
//! with the canonical orientation `u < v`, and iteration is always ascending
//! lexicographic, so every downstream computation is reproducible.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::maxflow::Flow;

/// Undirected graph with positive integral edge weights. Weight 0 means the
/// edge is absent; parallel edges are summed on insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(u32, u32), u64>,
    max_w: u64,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: BTreeMap::new(),
            max_w: 0,
        }
    }

    /// Adds `w` to the weight of `{u, v}`. Zero-weight additions are ignored.
    pub fn add_edge(&mut self, u: u32, v: u32, w: u64) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let n = self.n;
        for x in [u, v] {
            if x as usize >= n {
                return Err(Error::VertexOutOfRange(x, n));
            }
        }
        if w == 0 {
            return Ok(());
        }
        let key = (u.min(v), u.max(v));
        let slot = self.edges.entry(key).or_insert(0);
        *slot = slot.checked_add(w).ok_or(Error::Overflow)?;
        self.max_w = self.max_w.max(*slot);
        Ok(())
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32, u64)]) -> Result<Self> {
        let mut g = WeightedGraph::new(n);
        for &(u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Maximum present edge weight, 0 if edgeless. The symbol `W`.
    pub fn max_weight(&self) -> u64 {
        self.max_w
    }

    pub fn weight(&self, u: u32, v: u32) -> u64 {
        if u == v {
            return 0;
        }
        let key = (u.min(v), u.max(v));
        self.edges.get(&key).copied().unwrap_or(0)
    }

    /// Edges in ascending (u, v) order with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn total_weight(&self) -> Result<u64> {
        self.edges
            .values()
            .try_fold(0u64, |acc, &w| acc.checked_add(w).ok_or(Error::Overflow))
    }

    /// Neighbor lists in ascending vertex order, entries `(neighbor, weight)`.
    pub fn adjacency(&self) -> Vec<Vec<(u32, u64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (&(u, v), &w) in &self.edges {
            adj[u as usize].push((v, w));
            adj[v as usize].push((u, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn weighted_degree(&self, v: u32) -> Result<u64> {
        let mut d = 0u64;
        for (&(a, b), &w) in &self.edges {
            if a == v || b == v {
                d = d.checked_add(w).ok_or(Error::Overflow)?;
            }
        }
        Ok(d)
    }

    /// Induced subgraph on `vertices`, relabeled to dense ids following the
    /// ascending order of `vertices`. Returns the subgraph and the map from
    /// new id to original id.
    pub fn induced(&self, vertices: &[u32]) -> (WeightedGraph, Vec<u32>) {
        let mut sorted: Vec<u32> = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![u32::MAX; self.n];
        for (i, &v) in sorted.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let mut sub = WeightedGraph::new(sorted.len());
        for (&(u, v), &w) in &self.edges {
            let (iu, iv) = (index[u as usize], index[v as usize]);
            if iu != u32::MAX && iv != u32::MAX {
                sub.add_edge(iu, iv, w).expect("relabeled edge is valid");
            }
        }
        (sub, sorted)
    }
}

/// Subset of the vertex set `[n]`, bitset-backed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            s.insert(v as u32);
        }
        s
    }

    pub fn from_vertices(n: usize, vertices: &[u32]) -> Self {
        let mut s = VertexSet::empty(n);
        for &v in vertices {
            s.insert(v);
        }
        s
    }

    /// For n <= 64: bit i of `mask` selects vertex i.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        let mut s = VertexSet::empty(n);
        if n > 0 {
            s.words[0] = mask;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: u32) {
        debug_assert!((v as usize) < self.n);
        self.words[v as usize / 64] |= 1u64 << (v % 64);
    }

    pub fn contains(&self, v: u32) -> bool {
        (v as usize) < self.n && self.words[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Neither empty nor all of `[n]`.
    pub fn is_non_trivial(&self) -> bool {
        let k = self.len();
        k > 0 && k < self.n
    }

    pub fn complement(&self) -> VertexSet {
        let mut c = VertexSet::empty(self.n);
        for v in 0..self.n as u32 {
            if !self.contains(v) {
                c.insert(v);
            }
        }
        c
    }

    /// Members in ascending order.
    pub fn vertices(&self) -> Vec<u32> {
        (0..self.n as u32).filter(|&v| self.contains(v)).collect()
    }
}

/// Blocks of a partition, pairwise disjoint and covering `[n]`, each block
/// sorted ascending and blocks ordered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<u32>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                if v as usize >= n {
                    return Err(Error::VertexOutOfRange(v, n));
                }
                if block_of[v as usize] != usize::MAX {
                    return Err(Error::Parameter(format!(
                        "vertex {v} appears in two blocks"
                    )));
                }
                block_of[v as usize] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::Parameter("partition does not cover V".into()));
        }
        Ok(Partition { blocks, block_of })
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n as u32).map(|v| vec![v]).collect(),
            block_of: (0..n).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: u32) -> usize {
        self.block_of[v as usize]
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }
}

/// w(Δ_G(X)): summed weight of edges with exactly one endpoint in `shore`.
pub fn cut_weight(g: &WeightedGraph, shore: &VertexSet) -> Result<u64> {
    if !shore.is_non_trivial() {
        return Err(Error::TrivialShore);
    }
    let mut total = 0u64;
    for (u, v, w) in g.edges() {
        if shore.contains(u) != shore.contains(v) {
            total = total.checked_add(w).ok_or(Error::Overflow)?;
        }
    }
    Ok(total)
}

/// Connected components over edges of positive weight, as a partition.
pub fn connected_components(g: &WeightedGraph) -> Partition {
    let n = g.n();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], v: u32) -> u32 {
        let mut r = v;
        while parent[r as usize] != r {
            r = parent[r as usize];
        }
        let mut c = v;
        while parent[c as usize] != r {
            let next = parent[c as usize];
            parent[c as usize] = r;
            c = next;
        }
        r
    }
    for (u, v, _) in g.edges() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru.max(rv) as usize] = ru.min(rv);
        }
    }
    let mut groups: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for v in 0..n as u32 {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    Partition::new(n, groups.into_values().collect()).expect("components form a partition")
}

/// Contract each block of `p` to a single vertex; vertex i of the result is
/// block i. Inter-block weights are summed, intra-block edges discarded.
pub fn contract(g: &WeightedGraph, p: &Partition) -> Result<WeightedGraph> {
    debug_assert_eq!(p.n(), g.n());
    let mut out = WeightedGraph::new(p.len());
    for (u, v, w) in g.edges() {
        let (bu, bv) = (p.block_of(u), p.block_of(v));
        if bu != bv {
            out.add_edge(bu as u32, bv as u32, w)?;
        }
    }
    Ok(out)
}

/// H' with w_{H'}(e) = w_H(e) - |F(e)|. Errors if F is infeasible in H.
pub fn subtract_flow(h: &WeightedGraph, f: &Flow) -> Result<WeightedGraph> {
    let mut out = WeightedGraph::new(h.n());
    let mut seen = 0usize;
    for (u, v, w) in h.edges() {
        let used = f.edge_flow(u, v).unsigned_abs();
        if used > 0 {
            seen += 1;
        }
        if used > w {
            return Err(Error::FlowExceedsCapacity(u, v));
        }
        out.add_edge(u, v, w - used)?;
    }
    if seen < f.support_size() {
        // F routes along an edge absent from H.
        let (u, v) = f
            .support_edges()
            .find(|&(u, v)| h.weight(u, v) == 0)
            .expect("missing support edge exists");
        return Err(Error::FlowExceedsCapacity(u, v));
    }
    Ok(out)
}
