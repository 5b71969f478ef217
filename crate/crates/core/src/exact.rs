//! Brute-force ground-truth oracles: minimum s-t cut by shore enumeration,
//! enumeration of all minimum s-t cuts, deterministic global minimum cut
//! (minimum-cut-phase contraction), and exact edge strength via recursive
//! decomposition with a definitional cross-check for tiny graphs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{connected_components, VertexSet, WeightedGraph};

pub const BRUTE_FORCE_LIMIT: usize = 20;
pub const ENUMERATE_LIMIT: usize = 16;
pub const STRENGTH_LIMIT: usize = 2000;
pub const DEFINITIONAL_LIMIT: usize = 8;

/// Exact λ_st(G) together with a minimizing shore containing s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCutCertificate {
    pub value: u64,
    pub shore: VertexSet,
}

/// Exact per-edge strength k_e, keyed by canonical (u, v) with u < v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthMap {
    strengths: BTreeMap<(u32, u32), u64>,
}

impl StrengthMap {
    pub fn get(&self, u: u32, v: u32) -> u64 {
        self.strengths
            .get(&(u.min(v), u.max(v)))
            .copied()
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.strengths.iter().map(|(&(u, v), &k)| (u, v, k))
    }
}

fn mask_cut_weight(edges: &[(u32, u32, u64)], mask: u64) -> u64 {
    let mut total = 0u64;
    for &(u, v, w) in edges {
        if (mask >> u ^ mask >> v) & 1 == 1 {
            total += w;
        }
    }
    total
}

fn shore_vertices(mask: u64, n: usize) -> Vec<u32> {
    (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Exact λ_st(G) by enumerating all 2^{n-2} shores containing s and not t.
/// Ties go to the lexicographically smallest shore.
pub fn brute_force_min_st_cut(g: &WeightedGraph, s: u32, t: u32) -> Result<MinCutCertificate> {
    if s == t {
        return Err(Error::SourceIsSink);
    }
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleBound {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let free: Vec<u32> = (0..n as u32).filter(|&v| v != s && v != t).collect();
    let edges: Vec<(u32, u32, u64)> = g.edges().collect();
    let mut best: Option<(u64, Vec<u32>)> = None;
    for combo in 0..1u64 << free.len() {
        let mut mask = 1u64 << s;
        for (i, &v) in free.iter().enumerate() {
            if combo >> i & 1 == 1 {
                mask |= 1u64 << v;
            }
        }
        let w = mask_cut_weight(&edges, mask);
        let better = match &best {
            None => true,
            Some((bw, bs)) => w < *bw || (w == *bw && shore_vertices(mask, n) < *bs),
        };
        if better {
            best = Some((w, shore_vertices(mask, n)));
        }
    }
    let (value, shore) = best.expect("at least the singleton shore exists");
    Ok(MinCutCertificate {
        value,
        shore: VertexSet::from_vertices(n, &shore),
    })
}

/// All shores X with s ∈ X, t ∉ X attaining λ_st(G), in lexicographic order.
pub fn enumerate_min_st_cuts(g: &WeightedGraph, s: u32, t: u32) -> Result<Vec<VertexSet>> {
    if s == t {
        return Err(Error::SourceIsSink);
    }
    let n = g.n();
    if n > ENUMERATE_LIMIT {
        return Err(Error::OracleBound {
            n,
            limit: ENUMERATE_LIMIT,
        });
    }
    let lambda = brute_force_min_st_cut(g, s, t)?.value;
    let free: Vec<u32> = (0..n as u32).filter(|&v| v != s && v != t).collect();
    let edges: Vec<(u32, u32, u64)> = g.edges().collect();
    let mut shores: Vec<Vec<u32>> = Vec::new();
    for combo in 0..1u64 << free.len() {
        let mut mask = 1u64 << s;
        for (i, &v) in free.iter().enumerate() {
            if combo >> i & 1 == 1 {
                mask |= 1u64 << v;
            }
        }
        if mask_cut_weight(&edges, mask) == lambda {
            shores.push(shore_vertices(mask, n));
        }
    }
    shores.sort();
    Ok(shores
        .into_iter()
        .map(|vs| VertexSet::from_vertices(n, &vs))
        .collect())
}

/// Of a shore and its complement, the lexicographically smaller vertex list.
fn lex_min_side(n: usize, mut shore: Vec<u32>) -> Vec<u32> {
    shore.sort_unstable();
    let complement: Vec<u32> = (0..n as u32).filter(|v| !shore.contains(v)).collect();
    if complement < shore {
        complement
    } else {
        shore
    }
}

/// Deterministic global minimum cut by repeated minimum-cut phases, returning
/// the weight and a minimizing shore (the lexicographically smaller side).
pub fn global_min_cut_with_shore(g: &WeightedGraph) -> Result<(u64, Vec<u32>)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Parameter("global min cut needs n >= 2".into()));
    }
    let mut weight = vec![vec![0u64; n]; n];
    for (u, v, w) in g.edges() {
        weight[u as usize][v as usize] = w;
        weight[v as usize][u as usize] = w;
    }
    let mut groups: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(u64, Vec<u32>)> = None;
    while active.len() > 1 {
        // minimum cut phase from the smallest active vertex
        let mut in_a = vec![false; n];
        let mut conn = vec![0u64; n];
        let start = active[0];
        in_a[start] = true;
        for &v in &active[1..] {
            conn[v] = weight[start][v];
        }
        let mut order = vec![start];
        for _ in 1..active.len() {
            let next = active
                .iter()
                .copied()
                .filter(|&v| !in_a[v])
                .max_by(|&a, &b| conn[a].cmp(&conn[b]).then(b.cmp(&a)))
                .expect("phase has a remaining vertex");
            in_a[next] = true;
            order.push(next);
            for &v in &active {
                if !in_a[v] {
                    conn[v] += weight[next][v];
                }
            }
        }
        let last = *order.last().expect("order nonempty");
        let cut_of_phase = conn[last];
        let shore = lex_min_side(n, groups[last].clone());
        let better = match &best {
            None => true,
            Some((bw, bs)) => cut_of_phase < *bw || (cut_of_phase == *bw && shore < *bs),
        };
        if better {
            best = Some((cut_of_phase, shore));
        }
        // merge the last vertex into the second-to-last
        let prev = order[order.len() - 2];
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        for &v in &active {
            if v != last && v != prev {
                weight[prev][v] += weight[last][v];
                weight[v][prev] = weight[prev][v];
            }
        }
        active.retain(|&v| v != last);
    }
    Ok(best.expect("n >= 2 yields at least one phase"))
}

/// Exact minimum cut weight over all non-trivial shores; 0 if disconnected.
pub fn global_min_cut(g: &WeightedGraph) -> Result<u64> {
    global_min_cut_with_shore(g).map(|(w, _)| w)
}

/// Exact edge strengths via recursive decomposition: every edge of a
/// connected piece receives the piece's minimum cut value as a candidate,
/// the piece splits at the minimizing shore, and both sides recurse.
pub fn exact_edge_strength(g: &WeightedGraph) -> Result<StrengthMap> {
    let n = g.n();
    if n > STRENGTH_LIMIT {
        return Err(Error::OracleBound {
            n,
            limit: STRENGTH_LIMIT,
        });
    }
    let mut strengths: BTreeMap<(u32, u32), u64> =
        g.edges().map(|(u, v, _)| ((u, v), 0)).collect();
    let mut stack: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
    while let Some(vs) = stack.pop() {
        if vs.len() < 2 {
            continue;
        }
        let (sub, ids) = g.induced(&vs);
        if sub.m() == 0 {
            continue;
        }
        let comps = connected_components(&sub);
        if comps.len() > 1 {
            for block in comps.blocks() {
                stack.push(block.iter().map(|&v| ids[v as usize]).collect());
            }
            continue;
        }
        let (lambda, shore) = global_min_cut_with_shore(&sub)?;
        for (u, v, _) in sub.edges() {
            let (ou, ov) = (ids[u as usize], ids[v as usize]);
            let key = (ou.min(ov), ou.max(ov));
            let slot = strengths.get_mut(&key).expect("edge of G");
            *slot = (*slot).max(lambda);
        }
        let shore_orig: Vec<u32> = shore.iter().map(|&v| ids[v as usize]).collect();
        let rest: Vec<u32> = ids
            .iter()
            .copied()
            .filter(|v| !shore_orig.contains(v))
            .collect();
        stack.push(shore_orig);
        stack.push(rest);
    }
    Ok(StrengthMap { strengths })
}

/// Definitional strength oracle: k_e = max over induced subgraphs containing
/// both endpoints of the subgraph's global minimum cut. Exponential; n <= 8.
pub fn definitional_edge_strength(g: &WeightedGraph) -> Result<StrengthMap> {
    let n = g.n();
    if n > DEFINITIONAL_LIMIT {
        return Err(Error::OracleBound {
            n,
            limit: DEFINITIONAL_LIMIT,
        });
    }
    let mut strengths: BTreeMap<(u32, u32), u64> =
        g.edges().map(|(u, v, _)| ((u, v), 0)).collect();
    for mask in 1u64..1 << n {
        if mask.count_ones() < 2 {
            continue;
        }
        let vs = shore_vertices(mask, n);
        let (sub, ids) = g.induced(&vs);
        if sub.m() == 0 {
            continue;
        }
        // minimum cut of the induced subgraph by direct shore enumeration
        let edges: Vec<(u32, u32, u64)> = sub.edges().collect();
        let k = sub.n();
        let lambda = (1..(1u64 << k) - 1)
            .map(|m| mask_cut_weight(&edges, m))
            .min()
            .unwrap_or(0);
        if lambda == 0 {
            continue;
        }
        for (u, v, _) in sub.edges() {
            let (ou, ov) = (ids[u as usize], ids[v as usize]);
            let key = (ou.min(ov), ou.max(ov));
            let slot = strengths.get_mut(&key).expect("edge of G");
            *slot = (*slot).max(lambda);
        }
    }
    Ok(StrengthMap { strengths })
}
