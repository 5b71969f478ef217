//! Edge strength estimates and k-strong partitions.
//!
//! The default backend returns exact strengths, so both contract items
//! (underestimation and Σ w(e)/k̃_e = O(n)) hold with constant 1. The
//! partition itself is computed by peeling low-degree vertices and splitting
//! at minimum cuts below k, which yields exactly the connected components
//! that survive deleting edges with k̃_e < k; the equivalence is covered by
//! tests against that definition.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact::{exact_edge_strength, global_min_cut, global_min_cut_with_shore, StrengthMap};
use crate::graph::{connected_components, Partition, WeightedGraph};

/// Block size above which the k-connectivity re-check is skipped.
pub const CONNECTIVITY_CHECK_LIMIT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrengthBackend {
    Exact,
}

#[derive(Debug, Clone)]
pub struct StrengthEstimate {
    pub strengths: StrengthMap,
    pub backend: StrengthBackend,
}

/// Strength estimates satisfying k̃_e <= k_e and Σ w(e)/k̃_e <= n. The exact
/// backend makes both hold with equality headroom (Σ <= n - 1).
pub fn estimate_strengths(g: &WeightedGraph) -> Result<StrengthEstimate> {
    let strengths = exact_edge_strength(g)?;
    let sum: f64 = g
        .edges()
        .map(|(u, v, w)| w as f64 / strengths.get(u, v) as f64)
        .sum();
    if sum > g.n() as f64 {
        return Err(Error::InternalContract(format!(
            "strength sum {sum} exceeds n = {}",
            g.n()
        )));
    }
    Ok(StrengthEstimate {
        strengths,
        backend: StrengthBackend::Exact,
    })
}

#[derive(Debug, Clone)]
pub struct StrongPartition {
    pub partition: Partition,
    pub k: u64,
    /// Total weight of edges crossing between blocks.
    pub cross_weight: u64,
}

/// Vertices of `vs` (original ids) whose weighted degree inside the induced
/// subgraph is below k; peeled iteratively. Returns (peeled, kept).
fn peel_below(g: &WeightedGraph, vs: &[u32], k: u64) -> (Vec<u32>, Vec<u32>) {
    let (sub, ids) = g.induced(vs);
    let adj = sub.adjacency();
    let mut deg: Vec<u64> = (0..sub.n())
        .map(|v| adj[v].iter().map(|&(_, w)| w).sum())
        .collect();
    let mut removed = vec![false; sub.n()];
    let mut queue: VecDeque<usize> = (0..sub.n()).filter(|&v| deg[v] < k).collect();
    for &v in &queue {
        removed[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &(u, w) in &adj[v] {
            let u = u as usize;
            if !removed[u] {
                deg[u] -= w;
                if deg[u] < k {
                    removed[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut peeled = Vec::new();
    let mut kept = Vec::new();
    for v in 0..sub.n() {
        if removed[v] {
            peeled.push(ids[v]);
        } else {
            kept.push(ids[v]);
        }
    }
    (peeled, kept)
}

/// k-strong partition: blocks are the maximal k-strong components of `g`
/// (single vertices count as ∞-strong). Both definition items are
/// assert-checked before returning.
pub fn strong_partition(g: &WeightedGraph, k: u64) -> Result<StrongPartition> {
    if k < 1 {
        return Err(Error::Parameter("k must be >= 1".into()));
    }
    let n = g.n();
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
    while let Some(vs) = stack.pop() {
        if vs.len() <= 1 {
            if !vs.is_empty() {
                blocks.push(vs);
            }
            continue;
        }
        // a vertex of induced weighted degree < k is in no multi-vertex
        // k-strong component, so it peels off as a singleton
        let (peeled, kept) = peel_below(g, &vs, k);
        for v in peeled {
            blocks.push(vec![v]);
        }
        if kept.len() <= 1 {
            if !kept.is_empty() {
                blocks.push(kept);
            }
            continue;
        }
        let (sub, ids) = g.induced(&kept);
        let comps = connected_components(&sub);
        if comps.len() > 1 {
            for block in comps.blocks() {
                stack.push(block.iter().map(|&v| ids[v as usize]).collect());
            }
            continue;
        }
        let (lambda, shore) = global_min_cut_with_shore(&sub)?;
        if lambda >= k {
            blocks.push(kept);
        } else {
            // no k-strong component crosses a cut of weight < k
            let shore_orig: Vec<u32> = shore.iter().map(|&v| ids[v as usize]).collect();
            let rest: Vec<u32> = ids
                .iter()
                .copied()
                .filter(|v| !shore_orig.contains(v))
                .collect();
            stack.push(shore_orig);
            stack.push(rest);
        }
    }
    let partition = Partition::new(n, blocks)?;

    // item 1: each multi-vertex block induces a k-connected subgraph
    for block in partition.blocks() {
        if block.len() >= 2 && block.len() <= CONNECTIVITY_CHECK_LIMIT {
            let (sub, _) = g.induced(block);
            let lambda = global_min_cut(&sub)?;
            if lambda < k {
                return Err(Error::InternalContract(format!(
                    "block of size {} has min cut {lambda} < k = {k}",
                    block.len()
                )));
            }
        }
    }
    // item 2: cross-block weight is at most k·n
    let mut cross_weight = 0u64;
    for (u, v, w) in g.edges() {
        if partition.block_of(u) != partition.block_of(v) {
            cross_weight = cross_weight.checked_add(w).ok_or(Error::Overflow)?;
        }
    }
    if (cross_weight as u128) > (k as u128) * (n as u128) {
        return Err(Error::InternalContract(format!(
            "cross-block weight {cross_weight} exceeds k·n = {}",
            k as u128 * n as u128
        )));
    }
    Ok(StrongPartition {
        partition,
        k,
        cross_weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cut_weight;
    use crate::graph::VertexSet;

    fn two_triangles_bridge() -> WeightedGraph {
        WeightedGraph::from_edges(
            6,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (0, 2, 1),
                (3, 4, 1),
                (4, 5, 1),
                (3, 5, 1),
                (2, 3, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn estimate_examples() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 7)]).unwrap();
        let est = estimate_strengths(&g).unwrap();
        assert_eq!(est.strengths.get(0, 1), 7);

        let g = two_triangles_bridge();
        let est = estimate_strengths(&g).unwrap();
        let sum: f64 = g
            .edges()
            .map(|(u, v, w)| w as f64 / est.strengths.get(u, v) as f64)
            .sum();
        assert!((sum - 4.0).abs() < 1e-9);

        let mut k4 = WeightedGraph::new(4);
        for u in 0..4u32 {
            for v in u + 1..4 {
                k4.add_edge(u, v, 1).unwrap();
            }
        }
        let est = estimate_strengths(&k4).unwrap();
        let sum: f64 = k4
            .edges()
            .map(|(u, v, w)| w as f64 / est.strengths.get(u, v) as f64)
            .sum();
        assert!((sum - 2.0).abs() < 1e-9);
    }

    #[test]
    fn partition_k1_connected() {
        let g = two_triangles_bridge();
        let sp = strong_partition(&g, 1).unwrap();
        assert_eq!(sp.partition.len(), 1);
        assert_eq!(sp.cross_weight, 0);
    }

    #[test]
    fn partition_k2_splits_at_bridge() {
        let g = two_triangles_bridge();
        let sp = strong_partition(&g, 2).unwrap();
        assert_eq!(sp.partition.blocks(), &[vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(sp.cross_weight, 1);
    }

    #[test]
    fn partition_k_above_max_strength() {
        let g = two_triangles_bridge();
        let sp = strong_partition(&g, 10).unwrap();
        assert_eq!(sp.partition.len(), 6);
        assert_eq!(sp.cross_weight, g.total_weight().unwrap());
        assert!(sp.cross_weight <= 10 * g.n() as u64);
    }

    #[test]
    fn partition_matches_strength_deletion_definition() {
        use crate::instances::gen_random;
        for seed in 0..25u64 {
            let g = gen_random(9, 0.45, 3, seed).unwrap();
            let ks = exact_edge_strength(&g).unwrap();
            for k in 1..=5u64 {
                let sp = strong_partition(&g, k).unwrap();
                // definition: components after deleting edges with k_e < k
                let mut survivor = WeightedGraph::new(g.n());
                for (u, v, w) in g.edges() {
                    if ks.get(u, v) >= k {
                        survivor.add_edge(u, v, w).unwrap();
                    }
                }
                let expect = connected_components(&survivor);
                assert_eq!(
                    sp.partition.blocks(),
                    expect.blocks(),
                    "seed {seed}, k {k}"
                );
            }
        }
    }

    #[test]
    fn partition_blocks_are_k_connected() {
        use crate::instances::gen_random;
        for seed in 0..15u64 {
            let g = gen_random(10, 0.5, 4, seed).unwrap();
            for k in [2u64, 4, 8] {
                let sp = strong_partition(&g, k).unwrap();
                for block in sp.partition.blocks() {
                    if block.len() < 2 {
                        continue;
                    }
                    let (sub, _) = g.induced(block);
                    // every cut of the block weighs at least k
                    for mask in 1..(1u64 << sub.n()) - 1 {
                        let x = VertexSet::from_mask(sub.n(), mask);
                        assert!(cut_weight(&sub, &x).unwrap() >= k, "seed {seed} k {k}");
                    }
                }
                assert!(sp.cross_weight <= k * (g.n() as u64 - 1));
            }
        }
    }
}
