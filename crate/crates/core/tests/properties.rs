//! Randomized invariants checked against exhaustive oracles.

use proptest::prelude::*;

use stcut::exact::brute_force_min_st_cut;
use stcut::format::{emit_graph, parse_graph, GraphFile};
use stcut::graph::{contract, cut_weight, subtract_flow, Partition, VertexSet, WeightedGraph};
use stcut::maxflow::{make_noncircular, max_flow};
use stcut::oracle::ListOracle;
use stcut::pipeline::{st_min_cut, PipelineConfig};

/// Up to 9 vertices, arbitrary edge subsets with weights in 1..=6.
fn small_graph() -> impl Strategy<Value = WeightedGraph> {
    (2usize..=9)
        .prop_flat_map(|n| {
            let pairs: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
                .collect();
            let weights = proptest::collection::vec(proptest::option::of(1u64..=6), pairs.len());
            (Just(n), Just(pairs), weights)
        })
        .prop_map(|(n, pairs, weights)| {
            let edges: Vec<(u32, u32, u64)> = pairs
                .into_iter()
                .zip(weights)
                .filter_map(|((u, v), w)| w.map(|w| (u, v, w)))
                .collect();
            WeightedGraph::from_edges(n, &edges).unwrap()
        })
}

proptest! {
    #[test]
    fn cut_weight_is_complement_symmetric(g in small_graph(), mask in 1u64..510) {
        let mask = mask % ((1 << g.n()) - 2) + 1;
        let shore = VertexSet::from_mask(g.n(), mask);
        prop_assert_eq!(
            cut_weight(&g, &shore).unwrap(),
            cut_weight(&g, &shore.complement()).unwrap()
        );
    }

    #[test]
    fn max_flow_value_equals_brute_force_min_cut(g in small_graph()) {
        let t = g.n() as u32 - 1;
        let f = max_flow(&g, 0, t).unwrap();
        let cert = brute_force_min_st_cut(&g, 0, t).unwrap();
        prop_assert_eq!(f.value(), cert.value);
        f.validate(&g).unwrap();
    }

    #[test]
    fn noncircular_flow_keeps_value_and_feasibility(g in small_graph()) {
        let t = g.n() as u32 - 1;
        let f = max_flow(&g, 0, t).unwrap();
        let nc = make_noncircular(&f);
        prop_assert_eq!(nc.value(), f.value());
        nc.validate(&g).unwrap();
        prop_assert!(nc.total_weight() <= f.total_weight());
    }

    #[test]
    fn subtract_flow_then_weights_add_back(g in small_graph()) {
        let t = g.n() as u32 - 1;
        let f = make_noncircular(&max_flow(&g, 0, t).unwrap());
        let h = subtract_flow(&g, &f).unwrap();
        for (u, v, w) in g.edges() {
            prop_assert_eq!(h.weight(u, v) + f.edge_flow(u, v).unsigned_abs(), w);
        }
    }

    #[test]
    fn contraction_preserves_block_respecting_cuts(g in small_graph(), split in 0u64..512) {
        // partition into two blocks by parity of a random mask
        let n = g.n();
        let mask = split % ((1 << n) - 2) + 1;
        let side: Vec<u32> = (0..n as u32).filter(|v| mask >> v & 1 == 1).collect();
        let rest: Vec<u32> = (0..n as u32).filter(|v| mask >> v & 1 == 0).collect();
        let p = Partition::new(n, vec![side.clone(), rest]).unwrap();
        let c = contract(&g, &p).unwrap();
        if c.n() == 2 {
            let shore_c = VertexSet::from_vertices(2, &[p.block_of(side[0]) as u32]);
            let shore_g = VertexSet::from_vertices(n, &side);
            prop_assert_eq!(
                cut_weight(&c, &shore_c).unwrap(),
                cut_weight(&g, &shore_g).unwrap()
            );
        }
    }

    #[test]
    fn graph_file_round_trips(g in small_graph()) {
        let file = GraphFile { graph: g, order: None };
        prop_assert_eq!(parse_graph(&emit_graph(&file)).unwrap(), file);
    }

    #[test]
    fn pipeline_matches_brute_force(g in small_graph(), seed in 0u64..1000) {
        let t = g.n() as u32 - 1;
        let oracle = ListOracle::new(g.clone());
        let config = PipelineConfig { seed, ..PipelineConfig::default() };
        let res = st_min_cut(&oracle, 0, t, &config).unwrap();
        let cert = brute_force_min_st_cut(&g, 0, t).unwrap();
        prop_assert_eq!(res.lambda, cert.value);
        if res.shore.is_non_trivial() {
            prop_assert_eq!(cut_weight(&g, &res.shore).unwrap(), res.lambda);
        }
    }

    #[test]
    fn min_cut_never_exceeds_any_cut(g in small_graph(), mask_seed in 0u64..512) {
        let n = g.n();
        let mut mask = mask_seed % ((1 << n) - 2) + 1;
        // force s inside, t outside so the mask is an s-t shore
        mask |= 1;
        mask &= !(1 << (n - 1));
        if mask == 0 { mask = 1; }
        let shore = VertexSet::from_mask(n, mask);
        let cert = brute_force_min_st_cut(&g, 0, n as u32 - 1).unwrap();
        prop_assert!(cert.value <= cut_weight(&g, &shore).unwrap());
    }
}
