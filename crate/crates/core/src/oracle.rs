//! Oracle access to a graph (adjacency list / adjacency matrix) with query
//! counting, the cost ledger for modeled quantum queries, and classical
//! simulators of the quantum primitives (threshold Grover search, maximum
//! weight finding).
//!
//! The simulators always return exact answers; quantumness exists only in
//! the modeled costs charged to the ledger.

use std::cell::Cell;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    List,
    Matrix,
}

/// Query counter with a debug-mode shadow count incremented on the data
/// access itself, so miscounted wrappers are caught by `audit_ok`.
#[derive(Debug, Default)]
struct Counter {
    primary: Cell<u64>,
    #[cfg(debug_assertions)]
    shadow: Cell<u64>,
}

impl Counter {
    fn bump(&self) {
        self.primary.set(self.primary.get() + 1);
    }

    fn bump_shadow(&self) {
        #[cfg(debug_assertions)]
        self.shadow.set(self.shadow.get() + 1);
    }

    fn get(&self) -> u64 {
        self.primary.get()
    }

    fn audit_ok(&self) -> bool {
        #[cfg(debug_assertions)]
        return self.primary.get() == self.shadow.get();
        #[cfg(not(debug_assertions))]
        true
    }
}

pub trait GraphOracle {
    fn n(&self) -> usize;
    /// Edge count, exposed as instance metadata (the degree sequence is
    /// known to the algorithm in the list model).
    fn m(&self) -> usize;
    fn kind(&self) -> OracleKind;
    /// Length of the scan domain: 2m for lists, n² for matrices.
    fn scan_len(&self) -> usize;
    /// Edge at scan position `p`, as (u, v, w). None if the position holds
    /// no edge (matrix zero entries and the diagonal). Charged one query.
    fn probe(&self, p: usize) -> Option<(u32, u32, u64)>;
    fn classical_queries(&self) -> u64;
    fn audit_ok(&self) -> bool;

    /// Reads the whole graph through counted queries.
    fn read_full_graph(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new(self.n());
        for p in 0..self.scan_len() {
            if let Some((u, v, w)) = self.probe(p) {
                if u < v {
                    // each edge shows up once per endpoint / matrix side
                    g.add_edge(u, v, w).expect("oracle edge is valid");
                }
            }
        }
        g
    }
}

/// Adjacency-list oracle. Position p of the concatenated lists (length 2m)
/// maps to the i-th neighbor of vertex v; order defaults to ascending id.
pub struct ListOracle {
    graph: WeightedGraph,
    adj: Vec<Vec<(u32, u64)>>,
    offsets: Vec<usize>,
    degree_queries: Counter,
    neighbor_queries: Counter,
}

impl ListOracle {
    pub fn new(graph: WeightedGraph) -> Self {
        let adj = graph.adjacency();
        Self::from_adj(graph, adj)
    }

    /// Overrides the per-vertex neighbor order. Each list must be a
    /// permutation of the vertex's neighbors.
    pub fn with_order(graph: WeightedGraph, order: &[Vec<u32>]) -> Result<Self> {
        if order.len() != graph.n() {
            return Err(Error::Parameter(
                "neighbor order must cover every vertex".into(),
            ));
        }
        let default = graph.adjacency();
        let mut adj = Vec::with_capacity(graph.n());
        for (v, perm) in order.iter().enumerate() {
            let mut expect: Vec<u32> = default[v].iter().map(|&(u, _)| u).collect();
            let mut given = perm.clone();
            expect.sort_unstable();
            given.sort_unstable();
            if expect != given {
                return Err(Error::Parameter(format!(
                    "order for vertex {v} is not a permutation of its neighbors"
                )));
            }
            adj.push(
                perm.iter()
                    .map(|&u| (u, graph.weight(v as u32, u)))
                    .collect(),
            );
        }
        Ok(Self::from_adj(graph, adj))
    }

    fn from_adj(graph: WeightedGraph, adj: Vec<Vec<(u32, u64)>>) -> Self {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for list in &adj {
            acc += list.len();
            offsets.push(acc);
        }
        ListOracle {
            graph,
            adj,
            offsets,
            degree_queries: Counter::default(),
            neighbor_queries: Counter::default(),
        }
    }

    pub fn degree(&self, v: u32) -> usize {
        self.degree_queries.bump();
        self.degree_queries.bump_shadow();
        self.adj[v as usize].len()
    }

    /// The i-th neighbor of v (0-based, i < degree(v)) and the edge weight.
    pub fn neighbor(&self, v: u32, i: usize) -> (u32, u64) {
        self.neighbor_queries.bump();
        self.neighbor_queries.bump_shadow();
        self.adj[v as usize][i]
    }

    pub fn degree_queries(&self) -> u64 {
        self.degree_queries.get()
    }

    pub fn neighbor_queries(&self) -> u64 {
        self.neighbor_queries.get()
    }

    /// Decodes a concatenated-list position into (vertex, index).
    pub fn position(&self, p: usize) -> (u32, usize) {
        debug_assert!(p < self.scan_len());
        let v = self.offsets.partition_point(|&o| o <= p) - 1;
        (v as u32, p - self.offsets[v])
    }
}

impl GraphOracle for ListOracle {
    fn n(&self) -> usize {
        self.graph.n()
    }

    fn m(&self) -> usize {
        self.graph.m()
    }

    fn kind(&self) -> OracleKind {
        OracleKind::List
    }

    fn scan_len(&self) -> usize {
        2 * self.graph.m()
    }

    fn probe(&self, p: usize) -> Option<(u32, u32, u64)> {
        let (v, i) = self.position(p);
        let (u, w) = self.neighbor(v, i);
        Some((v, u, w))
    }

    fn classical_queries(&self) -> u64 {
        self.degree_queries.get() + self.neighbor_queries.get()
    }

    fn audit_ok(&self) -> bool {
        self.degree_queries.audit_ok() && self.neighbor_queries.audit_ok()
    }
}

/// Adjacency-matrix oracle over the n² entries.
pub struct MatrixOracle {
    graph: WeightedGraph,
    entry_queries: Counter,
}

impl MatrixOracle {
    pub fn new(graph: WeightedGraph) -> Self {
        MatrixOracle {
            graph,
            entry_queries: Counter::default(),
        }
    }

    pub fn entry(&self, u: u32, v: u32) -> u64 {
        self.entry_queries.bump();
        self.entry_queries.bump_shadow();
        self.graph.weight(u, v)
    }

    pub fn entry_queries(&self) -> u64 {
        self.entry_queries.get()
    }
}

impl GraphOracle for MatrixOracle {
    fn n(&self) -> usize {
        self.graph.n()
    }

    fn m(&self) -> usize {
        self.graph.m()
    }

    fn kind(&self) -> OracleKind {
        OracleKind::Matrix
    }

    fn scan_len(&self) -> usize {
        self.graph.n() * self.graph.n()
    }

    fn probe(&self, p: usize) -> Option<(u32, u32, u64)> {
        let n = self.graph.n();
        let (u, v) = ((p / n) as u32, (p % n) as u32);
        let w = self.entry(u, v);
        if w > 0 {
            Some((u, v, w))
        } else {
            None
        }
    }

    fn classical_queries(&self) -> u64 {
        self.entry_queries.get()
    }

    fn audit_ok(&self) -> bool {
        self.entry_queries.audit_ok()
    }
}

/// A charged invocation of a modeled quantum primitive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Primitive {
    Grover { threshold: u64, bits: u64 },
    MinFind { oracle: OracleKind, size: u64, c_dh: f64 },
    SparsifyList { m: u64, n: u64, eps: f64 },
    SparsifyMatrix { n: u64, eps: f64 },
}

pub fn ceil_sqrt(x: u128) -> u64 {
    let r = x.isqrt();
    let r = if r * r < x { r + 1 } else { r };
    r as u64
}

/// ⌈log₂ n⌉ with n <= 1 treated as 1 (the smallest instance still pays one
/// round of bookkeeping).
pub fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        1
    } else {
        64 - (n - 1).leading_zeros() as u64
    }
}

/// Closed-form modeled quantum query cost of a primitive invocation.
pub fn modeled_cost(p: &Primitive) -> u64 {
    match *p {
        Primitive::Grover { threshold, bits } => {
            ceil_sqrt(threshold as u128 * bits as u128) * ceil_log2(bits)
        }
        Primitive::MinFind { oracle, size, c_dh } => match oracle {
            // size = m for lists (domain 2m), size = n for matrices
            OracleKind::List => (c_dh * ((2 * size) as f64).sqrt()).ceil() as u64,
            OracleKind::Matrix => (c_dh * size as f64).ceil() as u64,
        },
        Primitive::SparsifyList { m, n, eps } => {
            (((m as f64) * (n as f64)).sqrt() / eps).ceil() as u64
        }
        Primitive::SparsifyMatrix { n, eps } => ((n as f64).powf(1.5) / eps).ceil() as u64,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub primitive: Primitive,
    pub modeled_queries: u64,
    pub classical_queries: u64,
}

/// Per-run bookkeeping: one entry per primitive invocation, holding the
/// modeled quantum cost and the classical queries the simulation spent.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CostLedger {
    entries: Vec<LedgerEntry>,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, primitive: Primitive, classical_queries: u64) -> u64 {
        let modeled = modeled_cost(&primitive);
        self.entries.push(LedgerEntry {
            primitive,
            modeled_queries: modeled,
            classical_queries,
        });
        modeled
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn modeled_total(&self) -> u64 {
        self.entries.iter().map(|e| e.modeled_queries).sum()
    }

    pub fn classical_total(&self) -> u64 {
        self.entries.iter().map(|e| e.classical_queries).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroverOutcome {
    /// |x| <= t: the exact set of one-positions, recovered with certainty.
    Learned(Vec<usize>),
    /// |x| > t and the 1/10 failure branch fired: a truncated, unsound
    /// position list. Callers must treat this as a failed run.
    LearnedUnsound(Vec<usize>),
    /// |x| > t, reported (probability 9/10).
    Abort,
}

#[derive(Debug, Clone)]
pub struct GroverReport {
    pub outcome: GroverOutcome,
    pub modeled_queries: u64,
    pub classical_queries: u64,
}

/// Threshold search over an N-bit oracle: recovers all one-positions exactly
/// when there are at most `t` of them, otherwise aborts with probability
/// 9/10. Charges ⌈√(tN)⌉·⌈log₂N⌉ modeled queries to the ledger.
pub fn grover_threshold_search<F, R>(
    n_bits: usize,
    t: u64,
    mut bit: F,
    rng: &mut R,
    ledger: &mut CostLedger,
) -> Result<GroverReport>
where
    F: FnMut(usize) -> bool,
    R: Rng + ?Sized,
{
    if t < 1 || t > n_bits as u64 {
        return Err(Error::Parameter(format!(
            "grover threshold t = {t} outside [1, {n_bits}]"
        )));
    }
    let mut ones = Vec::new();
    let mut classical = 0u64;
    for p in 0..n_bits {
        classical += 1;
        if bit(p) {
            ones.push(p);
            if ones.len() as u64 == t + 1 {
                break;
            }
        }
    }
    let outcome = if ones.len() as u64 <= t {
        GroverOutcome::Learned(ones)
    } else if rng.gen_bool(0.9) {
        GroverOutcome::Abort
    } else {
        GroverOutcome::LearnedUnsound(ones)
    };
    let modeled = ledger.charge(
        Primitive::Grover {
            threshold: t,
            bits: n_bits as u64,
        },
        classical,
    );
    Ok(GroverReport {
        outcome,
        modeled_queries: modeled,
        classical_queries: classical,
    })
}

/// Exact maximum edge weight via a counted classical scan, charged to the
/// ledger at the minimum-finding rate.
pub fn find_max_weight<O: GraphOracle + ?Sized>(
    oracle: &O,
    c_dh: f64,
    ledger: &mut CostLedger,
) -> u64 {
    let before = oracle.classical_queries();
    let mut max_w = 0u64;
    for p in 0..oracle.scan_len() {
        if let Some((_, _, w)) = oracle.probe(p) {
            max_w = max_w.max(w);
        }
    }
    let size = match oracle.kind() {
        OracleKind::List => oracle.m() as u64,
        OracleKind::Matrix => oracle.n() as u64,
    };
    ledger.charge(
        Primitive::MinFind {
            oracle: oracle.kind(),
            size,
            c_dh,
        },
        oracle.classical_queries() - before,
    );
    max_w
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path3() -> WeightedGraph {
        WeightedGraph::from_edges(3, &[(0, 1, 1), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn list_oracle_counts() {
        let o = ListOracle::new(path3());
        assert_eq!(o.degree(1), 2);
        assert_eq!(o.neighbor(1, 0), (0, 1));
        assert_eq!(o.neighbor(1, 1), (2, 1));
        assert_eq!(o.degree_queries(), 1);
        assert_eq!(o.neighbor_queries(), 2);
        assert!(o.audit_ok());
    }

    #[test]
    fn list_positions_cover_twice_m() {
        let o = ListOracle::new(path3());
        assert_eq!(o.scan_len(), 4);
        let decoded: Vec<(u32, usize)> = (0..4).map(|p| o.position(p)).collect();
        assert_eq!(decoded, vec![(0, 0), (1, 0), (1, 1), (2, 0)]);
    }

    #[test]
    fn custom_neighbor_order() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 2), (0, 2, 3)]).unwrap();
        let o = ListOracle::with_order(g.clone(), &[vec![2, 1], vec![0], vec![0]]).unwrap();
        assert_eq!(o.neighbor(0, 0), (2, 3));
        assert_eq!(o.neighbor(0, 1), (1, 2));
        assert!(ListOracle::with_order(g, &[vec![1, 1], vec![0], vec![0]]).is_err());
    }

    #[test]
    fn matrix_oracle_symmetric() {
        let o = MatrixOracle::new(path3());
        assert_eq!(o.entry(0, 1), 1);
        assert_eq!(o.entry(1, 0), 1);
        assert_eq!(o.entry(0, 0), 0);
        assert_eq!(o.entry(0, 2), 0);
        assert_eq!(o.entry_queries(), 4);
    }

    #[test]
    fn read_full_graph_round_trip() {
        let g = WeightedGraph::from_edges(4, &[(0, 1, 2), (1, 3, 5), (2, 3, 1)]).unwrap();
        assert_eq!(ListOracle::new(g.clone()).read_full_graph(), g);
        assert_eq!(MatrixOracle::new(g.clone()).read_full_graph(), g);
    }

    #[test]
    fn grover_all_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut ledger = CostLedger::new();
        let rep = grover_threshold_search(8, 3, |_| false, &mut rng, &mut ledger).unwrap();
        assert_eq!(rep.outcome, GroverOutcome::Learned(vec![]));
        assert_eq!(rep.classical_queries, 8);
    }

    #[test]
    fn grover_exact_recovery_and_cost() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut ledger = CostLedger::new();
        let ones = [3usize, 9];
        let rep = grover_threshold_search(16, 4, |p| ones.contains(&p), &mut rng, &mut ledger)
            .unwrap();
        assert_eq!(rep.outcome, GroverOutcome::Learned(vec![3, 9]));
        // ⌈√(4·16)⌉ · ⌈log₂ 16⌉ = 8 · 4
        assert_eq!(rep.modeled_queries, 32);
        assert_eq!(ledger.modeled_total(), 32);
    }

    #[test]
    fn grover_abort_rate_pinned() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut aborts = 0u32;
        for _ in 0..1000 {
            let mut ledger = CostLedger::new();
            let rep =
                grover_threshold_search(16, 2, |p| p < 3, &mut rng, &mut ledger).unwrap();
            match rep.outcome {
                GroverOutcome::Abort => aborts += 1,
                GroverOutcome::LearnedUnsound(ones) => assert_eq!(ones, vec![0, 1, 2]),
                GroverOutcome::Learned(_) => panic!("|x| > t cannot be learned soundly"),
            }
        }
        assert!((880..=920).contains(&aborts), "abort count {aborts}");
    }

    #[test]
    fn grover_parameter_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut ledger = CostLedger::new();
        assert!(grover_threshold_search(4, 0, |_| false, &mut rng, &mut ledger).is_err());
        assert!(grover_threshold_search(4, 5, |_| false, &mut rng, &mut ledger).is_err());
    }

    #[test]
    fn find_max_weight_examples() {
        let mut ledger = CostLedger::new();
        let o = ListOracle::new(path3());
        assert_eq!(find_max_weight(&o, 1.0, &mut ledger), 1);

        let g = WeightedGraph::from_edges(4, &[(0, 1, 1), (1, 2, 5), (2, 3, 3)]).unwrap();
        let o = ListOracle::new(g);
        assert_eq!(find_max_weight(&o, 1.0, &mut ledger), 5);

        let o = ListOracle::new(WeightedGraph::new(3));
        assert_eq!(find_max_weight(&o, 1.0, &mut ledger), 0);
    }

    #[test]
    fn modeled_cost_closed_forms() {
        assert_eq!(
            modeled_cost(&Primitive::SparsifyList {
                m: 10_000,
                n: 100,
                eps: 0.1
            }),
            10_000
        );
        assert_eq!(
            modeled_cost(&Primitive::SparsifyMatrix {
                n: 10_000,
                eps: 0.1
            }),
            10_000_000
        );
        assert_eq!(
            modeled_cost(&Primitive::Grover {
                threshold: 1,
                bits: 1
            }),
            1
        );
    }
}
