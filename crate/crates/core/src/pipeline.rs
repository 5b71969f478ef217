//! End-to-end s-t minimum cut: sparsify, max-flow, strong partition,
//! Grover-learn the contracted graph's edges, max-flow again, expand the
//! shore. All graph access goes through the oracle; all modeled quantum
//! costs land in the run's ledger.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{subtract_flow, Partition, VertexSet, WeightedGraph};
use crate::maxflow::{
    check_flow_weight_bound, make_noncircular, max_flow, min_cut_shore_from_residual,
};
use crate::oracle::{
    find_max_weight, grover_threshold_search, CostLedger, GraphOracle, GroverOutcome, OracleKind,
};
use crate::sparsify::{build_sparsifier, SparsifyConfig};
use crate::strength::strong_partition;

#[derive(Debug, Clone, Copy)]
pub struct PipelineConfig {
    /// Overrides ε = min((nW)^{-1/3}, 1/4); must stay below 1/3.
    pub eps_override: Option<f64>,
    /// Edge-learning abort threshold constant: T = ⌈c_t · ε n² W⌉.
    pub c_t: f64,
    /// Attempts before giving up (fresh randomness each time).
    pub retries: u32,
    pub sparsify: SparsifyConfig,
    /// Leading constant of the minimum-finding query model.
    pub c_dh: f64,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            eps_override: None,
            c_t: 64.0,
            retries: 5,
            sparsify: SparsifyConfig::default(),
            c_dh: 1.0,
            seed: 0,
        }
    }
}

/// Per-stage sizes and measured ratios of a successful run.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct StageStats {
    pub eps: f64,
    pub max_weight: u64,
    pub sparsifier_edges: u64,
    pub lambda_sparsifier: u64,
    pub strong_k: u64,
    pub block_count: u64,
    pub grover_threshold: u64,
    pub contracted_edges: u64,
    /// |E(G')| / (ε n² W), the contracted-size claim's measured ratio.
    pub contracted_ratio: f64,
    /// Σ|F(e)| / (10 n √(f W)) for the sparsifier flow.
    pub flow_weight_ratio: f64,
    pub flow_weight_pass: bool,
    pub retries_used: u32,
    pub matrix_fast_path: bool,
}

impl StageStats {
    fn trivial(max_weight: u64) -> Self {
        StageStats {
            eps: 0.0,
            max_weight,
            sparsifier_edges: 0,
            lambda_sparsifier: 0,
            strong_k: 0,
            block_count: 0,
            grover_threshold: 0,
            contracted_edges: 0,
            contracted_ratio: 0.0,
            flow_weight_ratio: 0.0,
            flow_weight_pass: true,
            retries_used: 0,
            matrix_fast_path: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub lambda: u64,
    pub shore: VertexSet,
    pub ledger: CostLedger,
    pub stats: StageStats,
    /// H, the sparsifier the successful attempt used (None on the trivial
    /// and matrix fast paths).
    pub sparsifier: Option<WeightedGraph>,
    /// The strong partition of H' the successful attempt used.
    pub partition: Option<Partition>,
}

/// ε = min((nW)^{-1/3}, 1/4) unless overridden; always below 1/3.
pub fn select_epsilon(n: usize, max_weight: u64, config: &PipelineConfig) -> Result<f64> {
    if n < 2 || max_weight < 1 {
        return Err(Error::Parameter(format!(
            "epsilon rule needs n >= 2 and W >= 1, got n = {n}, W = {max_weight}"
        )));
    }
    if let Some(eps) = config.eps_override {
        if !(eps > 0.0 && eps < 1.0 / 3.0) {
            return Err(Error::Parameter(format!(
                "epsilon override {eps} not in (0, 1/3)"
            )));
        }
        return Ok(eps);
    }
    Ok((n as f64 * max_weight as f64).powf(-1.0 / 3.0).min(0.25))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LearnOutcome {
    /// Deduplicated cross-partition edges with weights.
    Learned(Vec<(u32, u32, u64)>),
    /// Threshold exceeded and the search reported it.
    Aborted,
    /// Threshold exceeded but the 1/10 failure branch returned a truncated
    /// list; the result cannot be trusted.
    Unsound,
}

/// Grover-learns the edges of G whose endpoints lie in distinct blocks of
/// `partition`, scanning the concatenated adjacency lists (2m bits) or the
/// n² matrix entries with threshold T = ⌈c_t · ε n² W⌉.
pub fn learn_contracted_edges<O, R>(
    oracle: &O,
    partition: &Partition,
    eps: f64,
    max_weight: u64,
    c_t: f64,
    rng: &mut R,
    ledger: &mut CostLedger,
) -> Result<(LearnOutcome, u64)>
where
    O: GraphOracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    let n_bits = oracle.scan_len();
    if n_bits == 0 {
        return Ok((LearnOutcome::Learned(Vec::new()), 0));
    }
    let n = oracle.n() as f64;
    let raw = (c_t * eps * n * n * max_weight as f64).ceil() as u64;
    let threshold = raw.clamp(1, n_bits as u64);
    let bit = |p: usize| match oracle.probe(p) {
        Some((u, v, _)) => partition.block_of(u) != partition.block_of(v),
        None => false,
    };
    let report = grover_threshold_search(n_bits, threshold, bit, rng, ledger)?;
    let outcome = match report.outcome {
        GroverOutcome::Abort => LearnOutcome::Aborted,
        GroverOutcome::LearnedUnsound(_) => LearnOutcome::Unsound,
        GroverOutcome::Learned(positions) => {
            // re-read the found positions classically for the weights, then
            // drop the duplicate listing of each edge
            let mut edges: Vec<(u32, u32, u64)> = Vec::new();
            for p in positions {
                let (u, v, w) = oracle.probe(p).expect("position held an edge");
                edges.push((u.min(v), u.max(v), w));
            }
            edges.sort_unstable();
            edges.dedup();
            LearnOutcome::Learned(edges)
        }
    };
    Ok((outcome, threshold))
}

/// Grover-learns the edges crossing `shore`. A minimum cut of integral
/// weight at most n·W has at most n·W edges, and each crossing edge occupies
/// one scan position per endpoint, so the threshold is 2·n·W.
pub fn learn_cut_edges<O, R>(
    oracle: &O,
    shore: &VertexSet,
    max_weight: u64,
    rng: &mut R,
    ledger: &mut CostLedger,
) -> Result<Vec<(u32, u32, u64)>>
where
    O: GraphOracle + ?Sized,
    R: rand::Rng + ?Sized,
{
    if !shore.is_non_trivial() {
        return Err(Error::TrivialShore);
    }
    let n_bits = oracle.scan_len();
    if n_bits == 0 {
        return Ok(Vec::new());
    }
    let threshold = (oracle.n() as u64)
        .saturating_mul(max_weight)
        .saturating_mul(2)
        .clamp(1, n_bits as u64);
    let bit = |p: usize| match oracle.probe(p) {
        Some((u, v, _)) => shore.contains(u) != shore.contains(v),
        None => false,
    };
    let report = grover_threshold_search(n_bits, threshold, bit, rng, ledger)?;
    match report.outcome {
        GroverOutcome::Learned(positions) => {
            let mut edges: Vec<(u32, u32, u64)> = positions
                .into_iter()
                .map(|p| {
                    let (u, v, w) = oracle.probe(p).expect("position held an edge");
                    (u.min(v), u.max(v), w)
                })
                .collect();
            edges.sort_unstable();
            edges.dedup();
            Ok(edges)
        }
        _ => Err(Error::InternalContract(
            "cut-edge count exceeded the n·W threshold".into(),
        )),
    }
}

/// Runs the full pipeline and returns λ_st, the shore containing s, the cost
/// ledger and stage statistics.
pub fn st_min_cut<O: GraphOracle + ?Sized>(
    oracle: &O,
    s: u32,
    t: u32,
    config: &PipelineConfig,
) -> Result<PipelineResult> {
    if s == t {
        return Err(Error::SourceIsSink);
    }
    let n = oracle.n();
    for x in [s, t] {
        if x as usize >= n {
            return Err(Error::VertexOutOfRange(x, n));
        }
    }
    let mut ledger = CostLedger::new();
    let max_weight = find_max_weight(oracle, config.c_dh, &mut ledger);
    if max_weight == 0 {
        // edgeless graph: s is its own component
        let mut shore = VertexSet::empty(n);
        shore.insert(s);
        return Ok(PipelineResult {
            lambda: 0,
            shore,
            ledger,
            stats: StageStats::trivial(0),
            sparsifier: None,
            partition: None,
        });
    }

    // dense-weight shortcut in the matrix model: if W >= sqrt(n), reading
    // the whole matrix classically is already within budget
    if oracle.kind() == OracleKind::Matrix
        && (max_weight as u128) * (max_weight as u128) >= n as u128
    {
        let g = oracle.read_full_graph();
        let flow = max_flow(&g, s, t)?;
        let shore = min_cut_shore_from_residual(&g, &flow, s)?;
        let mut stats = StageStats::trivial(max_weight);
        stats.matrix_fast_path = true;
        debug_assert!(oracle.audit_ok());
        return Ok(PipelineResult {
            lambda: flow.value(),
            shore,
            ledger,
            stats,
            sparsifier: None,
            partition: None,
        });
    }

    let eps = select_epsilon(n, max_weight, config)?;
    for attempt in 0..config.retries.max(1) {
        let attempt_seed = config.seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(attempt as u64));
        let mut rng = ChaCha8Rng::seed_from_u64(attempt_seed ^ 0xc2b2_ae3d_27d4_eb4f);

        let sparsifier = build_sparsifier(oracle, eps, attempt_seed, &config.sparsify, &mut ledger)?;
        let h = &sparsifier.graph;

        let flow = max_flow(h, s, t)?;
        let flow = make_noncircular(&flow);
        let flow_check = check_flow_weight_bound(&flow, n, h.max_weight());
        let h_prime = subtract_flow(h, &flow)?;

        let k = ((3.0 * eps * n as f64).ceil() as u64).max(1);
        let partition = strong_partition(&h_prime, k)?;

        let (outcome, threshold) =
            learn_contracted_edges(oracle, &partition.partition, eps, max_weight, config.c_t, &mut rng, &mut ledger)?;
        let cross_edges = match outcome {
            LearnOutcome::Learned(edges) => edges,
            LearnOutcome::Aborted | LearnOutcome::Unsound => continue,
        };

        let blocks = partition.partition.len();
        let mut contracted = WeightedGraph::new(blocks);
        for &(u, v, w) in &cross_edges {
            let (bu, bv) = (
                partition.partition.block_of(u) as u32,
                partition.partition.block_of(v) as u32,
            );
            if bu == bv {
                return Err(Error::InternalContract(
                    "learned edge lies inside a partition block".into(),
                ));
            }
            contracted.add_edge(bu, bv, w)?;
        }
        let a = partition.partition.block_of(s) as u32;
        let b = partition.partition.block_of(t) as u32;
        if a == b {
            return Err(Error::InternalContract(
                "s and t share a block: flow subtraction left them connected".into(),
            ));
        }

        let contracted_flow = max_flow(&contracted, a, b)?;
        let lambda = contracted_flow.value();

        // a bad sparsifier draw shows up as λ outside [λ_H/(1+ε), λ_H/(1−ε)]
        let lambda_h = flow.value();
        let lo = lambda_h as f64 / (1.0 + eps);
        let hi = lambda_h as f64 / (1.0 - eps);
        if (lambda as f64) < lo - 1e-9 || (lambda as f64) > hi + 1e-9 {
            continue;
        }

        let shore_blocks = min_cut_shore_from_residual(&contracted, &contracted_flow, a)?;
        let mut shore = VertexSet::empty(n);
        for (bi, block) in partition.partition.blocks().iter().enumerate() {
            if shore_blocks.contains(bi as u32) {
                for &v in block {
                    shore.insert(v);
                }
            }
        }
        debug_assert!(shore.contains(s) && !shore.contains(t));
        debug_assert!(oracle.audit_ok());

        let denom = eps * (n as f64) * (n as f64) * max_weight as f64;
        let stats = StageStats {
            eps,
            max_weight,
            sparsifier_edges: h.m() as u64,
            lambda_sparsifier: lambda_h,
            strong_k: k,
            block_count: blocks as u64,
            grover_threshold: threshold,
            contracted_edges: contracted.m() as u64,
            contracted_ratio: contracted.m() as f64 / denom,
            flow_weight_ratio: flow_check.ratio,
            flow_weight_pass: flow_check.pass,
            retries_used: attempt,
            matrix_fast_path: false,
        };
        return Ok(PipelineResult {
            lambda,
            shore,
            ledger,
            stats,
            sparsifier: Some(sparsifier.graph),
            partition: Some(partition.partition),
        });
    }
    Err(Error::RetriesExhausted(config.retries.max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::brute_force_min_st_cut;
    use crate::graph::cut_weight;
    use crate::instances::gen_random;
    use crate::oracle::{ListOracle, MatrixOracle};

    #[test]
    fn epsilon_rule() {
        let cfg = PipelineConfig::default();
        assert!((select_epsilon(1000, 1, &cfg).unwrap() - 0.1).abs() < 1e-12);
        assert_eq!(select_epsilon(8, 1, &cfg).unwrap(), 0.25);
        assert!((select_epsilon(1000, 1000, &cfg).unwrap() - 0.01).abs() < 1e-12);
        let over = PipelineConfig {
            eps_override: Some(0.4),
            ..PipelineConfig::default()
        };
        assert!(select_epsilon(10, 1, &over).is_err());
    }

    #[test]
    fn path_and_disconnected() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let oracle = ListOracle::new(g.clone());
        let res = st_min_cut(&oracle, 0, 2, &PipelineConfig::default()).unwrap();
        assert_eq!(res.lambda, 1);
        assert_eq!(cut_weight(&g, &res.shore).unwrap(), 1);

        let g = WeightedGraph::from_edges(4, &[(0, 1, 2), (2, 3, 2)]).unwrap();
        let oracle = ListOracle::new(g);
        let res = st_min_cut(&oracle, 0, 3, &PipelineConfig::default()).unwrap();
        assert_eq!(res.lambda, 0);
        assert_eq!(res.shore.vertices(), vec![0, 1]);
    }

    #[test]
    fn edgeless_graph() {
        let oracle = ListOracle::new(WeightedGraph::new(4));
        let res = st_min_cut(&oracle, 1, 3, &PipelineConfig::default()).unwrap();
        assert_eq!(res.lambda, 0);
        assert_eq!(res.shore.vertices(), vec![1]);
    }

    #[test]
    fn matches_brute_force_on_random_instances() {
        for seed in 0..30u64 {
            let g = gen_random(10, 0.5, 4, seed).unwrap();
            let expect = brute_force_min_st_cut(&g, 0, 9).unwrap().value;
            let oracle = ListOracle::new(g.clone());
            let cfg = PipelineConfig {
                seed,
                ..PipelineConfig::default()
            };
            let res = st_min_cut(&oracle, 0, 9, &cfg).unwrap();
            assert_eq!(res.lambda, expect, "seed {seed}");
            assert_eq!(cut_weight(&g, &res.shore).unwrap(), res.lambda);
        }
    }

    #[test]
    fn matrix_fast_path_for_large_weights() {
        let g = gen_random(9, 0.6, 9, 3).unwrap(); // W = 9 >= sqrt(9)
        if g.max_weight() * g.max_weight() >= 9 {
            let oracle = MatrixOracle::new(g.clone());
            let res = st_min_cut(&oracle, 0, 8, &PipelineConfig::default()).unwrap();
            assert!(res.stats.matrix_fast_path);
            let expect = brute_force_min_st_cut(&g, 0, 8).unwrap().value;
            assert_eq!(res.lambda, expect);
        }
    }

    #[test]
    fn matrix_model_agrees() {
        for seed in 40..55u64 {
            let g = gen_random(9, 0.5, 2, seed).unwrap();
            let expect = brute_force_min_st_cut(&g, 0, 8).unwrap().value;
            let oracle = MatrixOracle::new(g.clone());
            let cfg = PipelineConfig {
                seed,
                ..PipelineConfig::default()
            };
            let res = st_min_cut(&oracle, 0, 8, &cfg).unwrap();
            assert_eq!(res.lambda, expect, "seed {seed}");
        }
    }

    #[test]
    fn learn_edges_single_block_is_empty() {
        let g = gen_random(6, 0.8, 2, 1).unwrap();
        let oracle = ListOracle::new(g);
        let p = Partition::new(6, vec![(0..6u32).collect()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut ledger = CostLedger::new();
        let (out, _) =
            learn_contracted_edges(&oracle, &p, 0.25, 2, 64.0, &mut rng, &mut ledger).unwrap();
        assert_eq!(out, LearnOutcome::Learned(vec![]));
    }

    #[test]
    fn learn_edges_singletons_return_everything() {
        let g = gen_random(6, 0.8, 2, 1).unwrap();
        let all: Vec<(u32, u32, u64)> = g.edges().collect();
        let oracle = ListOracle::new(g);
        let p = Partition::singletons(6);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut ledger = CostLedger::new();
        let (out, _) =
            learn_contracted_edges(&oracle, &p, 0.25, 2, 64.0, &mut rng, &mut ledger).unwrap();
        assert_eq!(out, LearnOutcome::Learned(all));
    }

    #[test]
    fn learn_edges_bridge_between_triangles() {
        let g = WeightedGraph::from_edges(
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
        .unwrap();
        let oracle = ListOracle::new(g);
        let p = Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut ledger = CostLedger::new();
        let (out, _) =
            learn_contracted_edges(&oracle, &p, 0.25, 1, 64.0, &mut rng, &mut ledger).unwrap();
        assert_eq!(out, LearnOutcome::Learned(vec![(2, 3, 1)]));
    }

    #[test]
    fn learn_cut_edges_examples() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let oracle = ListOracle::new(g);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut ledger = CostLedger::new();
        let shore = VertexSet::from_vertices(3, &[0]);
        let edges = learn_cut_edges(&oracle, &shore, 1, &mut rng, &mut ledger).unwrap();
        assert_eq!(edges, vec![(0, 1, 1)]);

        let mut k4 = WeightedGraph::new(4);
        for u in 0..4u32 {
            for v in u + 1..4 {
                k4.add_edge(u, v, 1).unwrap();
            }
        }
        let oracle = ListOracle::new(k4);
        let shore = VertexSet::from_vertices(4, &[0]);
        let edges = learn_cut_edges(&oracle, &shore, 1, &mut rng, &mut ledger).unwrap();
        assert_eq!(edges, vec![(0, 1, 1), (0, 2, 1), (0, 3, 1)]);
    }
}
