//! Seeded instance generators: random weighted graphs and the USTCON
//! lower-bound family (negative instance plus the G_{a,b,c} positives),
//! together with exhaustive verification of the family's counting facts.
//!
//! Family layout: s = 0, t = 1, a_j = 2j, b_j = 2j + 1 for j = 1..k with
//! k = (n-2)/2, so the global adjacency ordering s < t < a_1 < b_1 < ... is
//! plain ascending vertex id.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Each vertex pair present independently with probability `p`, weight
/// uniform in [1, max_w]. Deterministic per seed.
pub fn gen_random(n: usize, p: f64, max_w: u64, seed: u64) -> Result<WeightedGraph> {
    if n < 2 {
        return Err(Error::Parameter("gen_random needs n >= 2".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("edge probability {p} not in [0, 1]")));
    }
    if max_w < 1 {
        return Err(Error::Parameter("max weight must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = WeightedGraph::new(n);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                let w = rng.gen_range(1..=max_w);
                g.add_edge(u, v, w)?;
            }
        }
    }
    Ok(g)
}

/// Pair of side-internal indices (1-based, i < j) selecting {x_i, x_j}.
pub type SidePair = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBoundKind {
    /// s joined to all of A, t to all of B, cliques on A and B; s and t
    /// disconnected.
    Negative,
    /// Edges a (inside A) and b (inside B) removed, two crossing edges
    /// added according to the bit c.
    Positive { a: SidePair, b: SidePair, c: bool },
}

#[derive(Debug, Clone)]
pub struct LowerBoundInstance {
    pub n: usize,
    pub kind: LowerBoundKind,
    pub graph: WeightedGraph,
    /// Per-vertex neighbor order under the global ordering (ascending id).
    pub order: Vec<Vec<u32>>,
}

pub fn vertex_s() -> u32 {
    0
}

pub fn vertex_t() -> u32 {
    1
}

fn a_vertex(j: usize) -> u32 {
    2 * j as u32
}

fn b_vertex(j: usize) -> u32 {
    2 * j as u32 + 1
}

fn side_size(n: usize) -> usize {
    (n - 2) / 2
}

fn check_even(n: usize) -> Result<usize> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "lower-bound instance needs even n >= 6, got {n}"
        )));
    }
    Ok(side_size(n))
}

pub fn gen_lower_bound(n: usize, kind: LowerBoundKind) -> Result<LowerBoundInstance> {
    let k = check_even(n)?;
    let mut g = WeightedGraph::new(n);
    for j in 1..=k {
        g.add_edge(vertex_s(), a_vertex(j), 1)?;
        g.add_edge(vertex_t(), b_vertex(j), 1)?;
    }
    for i in 1..=k {
        for j in i + 1..=k {
            g.add_edge(a_vertex(i), a_vertex(j), 1)?;
            g.add_edge(b_vertex(i), b_vertex(j), 1)?;
        }
    }
    // the negative instance's lists are ascending; positives keep the slot
    // layout and replace removed neighbors in place, so an instance differs
    // from the negative one in exactly four list positions
    let mut order: Vec<Vec<u32>> = g
        .adjacency()
        .into_iter()
        .map(|list| list.into_iter().map(|(u, _)| u).collect())
        .collect();
    if let LowerBoundKind::Positive { a, b, c } = kind {
        for (i, j) in [a, b] {
            if i < 1 || j <= i || j > k {
                return Err(Error::Parameter(format!(
                    "side pair ({i}, {j}) invalid for k = {k}"
                )));
            }
        }
        let (a_lo, a_hi) = (a_vertex(a.0), a_vertex(a.1));
        let (b_lo, b_hi) = (b_vertex(b.0), b_vertex(b.1));
        remove_edge(&mut g, a_lo, a_hi)?;
        remove_edge(&mut g, b_lo, b_hi)?;
        let crossings = if c {
            [(a_lo, b_hi), (a_hi, b_lo)]
        } else {
            [(a_lo, b_lo), (a_hi, b_hi)]
        };
        for (x, y) in crossings {
            g.add_edge(x, y, 1)?;
            let removed_a = if x == a_lo { a_hi } else { a_lo };
            let removed_b = if y == b_lo { b_hi } else { b_lo };
            replace_neighbor(&mut order, x, removed_a, y);
            replace_neighbor(&mut order, y, removed_b, x);
        }
    }
    // degree invariant: every vertex of A ∪ B has degree (n-2)/2
    let adj = g.adjacency();
    for (v, list) in adj.iter().enumerate().skip(2) {
        if list.len() != k {
            return Err(Error::InternalContract(format!(
                "vertex {v} has degree {}, expected {k}",
                list.len()
            )));
        }
    }
    Ok(LowerBoundInstance { n, kind, graph: g, order })
}

fn replace_neighbor(order: &mut [Vec<u32>], v: u32, old: u32, new: u32) {
    let list = &mut order[v as usize];
    let i = list.iter().position(|&x| x == old).expect("neighbor present");
    list[i] = new;
}

fn remove_edge(g: &mut WeightedGraph, u: u32, v: u32) -> Result<()> {
    let mut out = WeightedGraph::new(g.n());
    let mut found = false;
    for (a, b, w) in g.edges() {
        if (a, b) == (u.min(v), u.max(v)) {
            found = true;
        } else {
            out.add_edge(a, b, w)?;
        }
    }
    if !found {
        return Err(Error::Parameter(format!("edge ({u}, {v}) not present")));
    }
    *g = out;
    Ok(())
}

/// All positive labels (a, b, c) for the family on n vertices:
/// 2·C(k,2)² of them with k = (n-2)/2.
pub fn positive_kinds(n: usize) -> Result<Vec<LowerBoundKind>> {
    let k = check_even(n)?;
    let mut pairs = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            pairs.push((i, j));
        }
    }
    let mut kinds = Vec::new();
    for &a in &pairs {
        for &b in &pairs {
            for c in [false, true] {
                kinds.push(LowerBoundKind::Positive { a, b, c });
            }
        }
    }
    Ok(kinds)
}

fn binom2(k: usize) -> u64 {
    (k as u64) * (k as u64 - 1) / 2
}

/// Number of positive instances for the family on n vertices.
pub fn positive_instance_count(n: usize) -> Result<u64> {
    let k = check_even(n)?;
    Ok(2 * binom2(k) * binom2(k))
}

/// Largest side size p such that a family on sides of size p fits an edge
/// budget of m: 2(p + C(p,2)) <= m.
pub fn side_size_for_edge_budget(m: usize) -> usize {
    let mut p = 0usize;
    while 2 * ((p + 1) + (p + 1) * p / 2) <= m {
        p += 1;
    }
    p
}

#[derive(Debug, Clone)]
pub struct FamilyCountReport {
    pub n: usize,
    pub positive_instances: u64,
    /// Per adjacency-list position (vertex, index): number of positive
    /// instances differing from the negative instance there.
    pub table: Vec<Vec<u64>>,
    pub max_count: u64,
    /// 2·C(k,2): the per-position bound the adversary argument uses.
    pub expected_max: u64,
    pub min_diff_positions: usize,
    /// positives / per-position max = C(k,2), the query lower bound's t/ℓ.
    pub adversary_ratio: u64,
}

pub const FAMILY_COUNT_LIMIT: usize = 12;

/// Exhaustively compares every positive instance's adjacency lists against
/// the negative instance, position by position.
pub fn verify_family_counting(n: usize) -> Result<FamilyCountReport> {
    let k = check_even(n)?;
    if n > FAMILY_COUNT_LIMIT {
        return Err(Error::OracleBound {
            n,
            limit: FAMILY_COUNT_LIMIT,
        });
    }
    let negative = gen_lower_bound(n, LowerBoundKind::Negative)?;
    let mut table: Vec<Vec<u64>> = negative
        .order
        .iter()
        .map(|list| vec![0u64; list.len()])
        .collect();
    let kinds = positive_kinds(n)?;
    let mut min_diff = usize::MAX;
    for &kind in &kinds {
        let inst = gen_lower_bound(n, kind)?;
        let mut diffs = 0usize;
        for (v, row) in table.iter_mut().enumerate() {
            debug_assert_eq!(inst.order[v].len(), negative.order[v].len());
            for (i, slot) in row.iter_mut().enumerate() {
                if inst.order[v][i] != negative.order[v][i] {
                    *slot += 1;
                    diffs += 1;
                }
            }
        }
        min_diff = min_diff.min(diffs);
    }
    let max_count = table
        .iter()
        .flat_map(|row| row.iter().copied())
        .max()
        .unwrap_or(0);
    let expected_max = 2 * binom2(k);
    if max_count != expected_max {
        return Err(Error::InternalContract(format!(
            "max per-position differing count {max_count}, expected {expected_max}"
        )));
    }
    if min_diff < 4 {
        return Err(Error::InternalContract(format!(
            "a positive instance differs in only {min_diff} positions"
        )));
    }
    for v in [vertex_s(), vertex_t()] {
        if table[v as usize].iter().any(|&c| c != 0) {
            return Err(Error::InternalContract(format!(
                "adjacency of vertex {v} differs across the family"
            )));
        }
    }
    let positive_instances = kinds.len() as u64;
    Ok(FamilyCountReport {
        n,
        positive_instances,
        table,
        max_count,
        expected_max,
        min_diff_positions: min_diff,
        adversary_ratio: positive_instances / expected_max,
    })
}
