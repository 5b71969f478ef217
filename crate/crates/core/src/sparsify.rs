//! ε-cut sparsifier construction by strength-based sampling with power-of-two
//! scaling (so weights stay integral), plus an exhaustive small-n verifier.
//!
//! The quantum construction is replaced by a classical one honoring the same
//! output contract; the quantum cost is charged to the ledger as a model.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{cut_weight, VertexSet, WeightedGraph};
use crate::oracle::{CostLedger, GraphOracle, OracleKind, Primitive};
use crate::strength::estimate_strengths;

#[derive(Debug, Clone, Copy)]
pub struct SparsifyConfig {
    /// Oversampling constant: ρ = c_rho · log₂n / ε².
    pub c_rho: f64,
    /// Size bound constant: |E(H)| <= c_size · n · log₂²n / ε².
    pub c_size: f64,
    /// Weight bound constant: max w_H <= c_w · ε² · n · log₂n · W.
    pub c_w: f64,
    /// Resample attempts before giving up on the size/weight bounds.
    pub max_attempts: u32,
}

impl Default for SparsifyConfig {
    fn default() -> Self {
        SparsifyConfig {
            c_rho: 32.0,
            c_size: 64.0,
            c_w: 64.0,
            max_attempts: 5,
        }
    }
}

/// A sparsifier H of G together with the per-edge scaling exponents:
/// w_H(e) = w_G(e) · 2^{j_e} for every kept edge.
#[derive(Debug, Clone)]
pub struct Sparsifier {
    pub graph: WeightedGraph,
    pub eps: f64,
    pub exponents: BTreeMap<(u32, u32), u32>,
    pub attempts: u32,
}

fn log2n(n: usize) -> f64 {
    (n.max(2) as f64).log2()
}

/// Largest power of 1/2 that is <= q, as the exponent j with 2^{-j} <= q.
fn half_power_exponent(q: f64) -> u32 {
    debug_assert!(q > 0.0);
    if q >= 1.0 {
        return 0;
    }
    let mut j = (1.0 / q).log2().ceil() as u32;
    while j > 0 && 0.5f64.powi(j as i32 - 1) <= q {
        j -= 1;
    }
    while 0.5f64.powi(j as i32) > q {
        j += 1;
    }
    j
}

/// Builds an ε-cut sparsifier of the oracle's graph. Keeps edge e with
/// probability 2^{-j_e}, the largest power of 1/2 at most min(1, ρ·w/k̃),
/// and scales kept weights by 2^{j_e}. Size and max-weight bounds are hard
/// checks; violations resample with a fresh seed up to `max_attempts` times.
pub fn build_sparsifier<O: GraphOracle + ?Sized>(
    oracle: &O,
    eps: f64,
    seed: u64,
    config: &SparsifyConfig,
    ledger: &mut CostLedger,
) -> Result<Sparsifier> {
    if !(eps > 0.0 && eps < 1.0 / 3.0) {
        return Err(Error::Parameter(format!("epsilon {eps} not in (0, 1/3)")));
    }
    let before = oracle.classical_queries();
    let g = oracle.read_full_graph();
    let classical = oracle.classical_queries() - before;
    let n = g.n();
    let m = g.m();
    if m == 0 {
        return Err(Error::Parameter("sparsifier needs at least one edge".into()));
    }
    let primitive = match oracle.kind() {
        OracleKind::List => Primitive::SparsifyList {
            m: m as u64,
            n: n as u64,
            eps,
        },
        OracleKind::Matrix => Primitive::SparsifyMatrix { n: n as u64, eps },
    };
    ledger.charge(primitive, classical);

    let rho = config.c_rho * log2n(n) / (eps * eps);
    let size_bound = (config.c_size * n as f64 * log2n(n) * log2n(n) / (eps * eps)) as u64;
    let weight_bound =
        (config.c_w * eps * eps * n as f64 * log2n(n) * g.max_weight() as f64).ceil() as u64;

    // strength upper bound: k_e <= min weighted endpoint degree; when
    // ρ·w(e) already dominates it for every edge, all sampling
    // probabilities are 1 and H = G without computing strengths
    let mut wdeg = vec![0u64; n];
    for (u, v, w) in g.edges() {
        wdeg[u as usize] += w;
        wdeg[v as usize] += w;
    }
    let all_kept = g.edges().all(|(u, v, w)| {
        rho * w as f64 >= wdeg[u as usize].min(wdeg[v as usize]) as f64
    });
    if all_kept {
        let exponents = g.edges().map(|(u, v, _)| ((u, v), 0u32)).collect();
        return Ok(Sparsifier {
            graph: g,
            eps,
            exponents,
            attempts: 1,
        });
    }

    let strengths = estimate_strengths(&g)?.strengths;
    for attempt in 0..config.max_attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let mut h = WeightedGraph::new(n);
        let mut exponents = BTreeMap::new();
        let mut ok = true;
        for (u, v, w) in g.edges() {
            let q = (rho * w as f64 / strengths.get(u, v) as f64).min(1.0);
            let j = half_power_exponent(q);
            if j > 0 && !rng.gen_bool(0.5f64.powi(j as i32)) {
                continue;
            }
            let scaled = (w as u128) << j;
            if scaled > u64::MAX as u128 {
                ok = false;
                break;
            }
            h.add_edge(u, v, scaled as u64)?;
            exponents.insert((u, v), j);
        }
        if ok && h.m() as u64 <= size_bound && h.max_weight() <= weight_bound {
            return Ok(Sparsifier {
                graph: h,
                eps,
                exponents,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::SparsifierResample(config.max_attempts))
}

#[derive(Debug, Clone)]
pub struct SparsifierCheck {
    pub pass: bool,
    /// Ratio w_H(cut)/w_G(cut) farthest from 1 over all cuts.
    pub worst_ratio: f64,
    pub witness: Option<VertexSet>,
}

pub const VERIFY_LIMIT: usize = 14;

/// Checks (1-ε)·w_G(Δ(X)) <= w_H(Δ(X)) <= (1+ε)·w_G(Δ(X)) for every
/// non-trivial shore. Exponential; n <= 14.
pub fn verify_sparsifier(g: &WeightedGraph, h: &WeightedGraph, eps: f64) -> Result<SparsifierCheck> {
    let n = g.n();
    if n > VERIFY_LIMIT {
        return Err(Error::OracleBound {
            n,
            limit: VERIFY_LIMIT,
        });
    }
    if h.n() != n || n < 2 {
        return Err(Error::Parameter("verify needs matching n >= 2".into()));
    }
    let mut pass = true;
    let mut worst_ratio = 1.0f64;
    let mut witness = None;
    // vertex n-1 fixed outside the shore; complements are symmetric
    for mask in 1u64..1 << (n - 1) {
        let shore = VertexSet::from_mask(n, mask);
        let wg = cut_weight(g, &shore)?;
        let wh = cut_weight(h, &shore)?;
        let ratio = if wg == 0 {
            if wh == 0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            wh as f64 / wg as f64
        };
        let violates = ratio < 1.0 - eps || ratio > 1.0 + eps;
        if (ratio - 1.0).abs() > (worst_ratio - 1.0).abs() {
            worst_ratio = ratio;
            if violates {
                witness = Some(shore.clone());
            }
        }
        if violates {
            pass = false;
            if witness.is_none() {
                witness = Some(shore);
            }
        }
    }
    Ok(SparsifierCheck {
        pass,
        worst_ratio,
        witness: if pass { None } else { witness },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_random;
    use crate::oracle::ListOracle;

    #[test]
    fn identity_when_probabilities_saturate() {
        let g = gen_random(10, 0.5, 3, 5).unwrap();
        let oracle = ListOracle::new(g.clone());
        let mut ledger = CostLedger::new();
        let sp =
            build_sparsifier(&oracle, 0.25, 7, &SparsifyConfig::default(), &mut ledger).unwrap();
        assert_eq!(sp.graph, g);
        assert!(sp.exponents.values().all(|&j| j == 0));
        assert_eq!(ledger.entries().len(), 1);
    }

    #[test]
    fn epsilon_range_enforced() {
        let oracle = ListOracle::new(gen_random(6, 0.5, 1, 0).unwrap());
        let mut ledger = CostLedger::new();
        let cfg = SparsifyConfig::default();
        assert!(build_sparsifier(&oracle, 0.0, 0, &cfg, &mut ledger).is_err());
        assert!(build_sparsifier(&oracle, 0.34, 0, &cfg, &mut ledger).is_err());
    }

    #[test]
    fn sampled_output_is_integral_scaled_subgraph() {
        // small c_rho forces real sampling
        let cfg = SparsifyConfig {
            c_rho: 0.25,
            ..SparsifyConfig::default()
        };
        for seed in 0..20u64 {
            let g = gen_random(12, 0.7, 4, seed).unwrap();
            let oracle = ListOracle::new(g.clone());
            let mut ledger = CostLedger::new();
            let sp = build_sparsifier(&oracle, 0.3, seed, &cfg, &mut ledger).unwrap();
            for (u, v, wh) in sp.graph.edges() {
                let wg = g.weight(u, v);
                assert!(wg > 0, "support containment");
                let j = sp.exponents[&(u, v)];
                assert_eq!(wh, wg << j, "w_H = w_G · 2^j");
            }
        }
    }

    #[test]
    fn verify_accepts_identity() {
        let g = gen_random(8, 0.5, 2, 3).unwrap();
        let chk = verify_sparsifier(&g, &g, 0.01).unwrap();
        assert!(chk.pass);
        assert_eq!(chk.worst_ratio, 1.0);
    }

    #[test]
    fn verify_rejects_empty_against_connected() {
        let g = gen_random(6, 1.0, 1, 0).unwrap();
        let chk = verify_sparsifier(&g, &WeightedGraph::new(6), 0.25).unwrap();
        assert!(!chk.pass);
        assert_eq!(chk.worst_ratio, 0.0);
        assert!(chk.witness.is_some());
    }

    #[test]
    fn verify_rejects_doubled_weights() {
        let g = gen_random(6, 1.0, 1, 0).unwrap();
        let mut doubled = WeightedGraph::new(6);
        for (u, v, w) in g.edges() {
            doubled.add_edge(u, v, 2 * w).unwrap();
        }
        let chk = verify_sparsifier(&g, &doubled, 0.25).unwrap();
        assert!(!chk.pass);
        assert!((chk.worst_ratio - 2.0).abs() < 1e-12);
    }

    #[test]
    fn half_power_exponents() {
        assert_eq!(half_power_exponent(1.5), 0);
        assert_eq!(half_power_exponent(1.0), 0);
        assert_eq!(half_power_exponent(0.5), 1);
        assert_eq!(half_power_exponent(0.4), 2);
        assert_eq!(half_power_exponent(0.25), 2);
        assert_eq!(half_power_exponent(0.2), 3);
    }

    #[test]
    fn default_config_preserves_cuts_at_quarter_eps() {
        let mut passes = 0;
        for seed in 0..25u64 {
            let g = gen_random(10, 0.5, 4, seed).unwrap();
            if g.m() == 0 {
                passes += 1;
                continue;
            }
            let oracle = ListOracle::new(g.clone());
            let mut ledger = CostLedger::new();
            let sp = build_sparsifier(&oracle, 0.25, seed, &SparsifyConfig::default(), &mut ledger)
                .unwrap();
            if verify_sparsifier(&g, &sp.graph, 0.25).unwrap().pass {
                passes += 1;
            }
        }
        assert!(passes >= 24, "only {passes}/25 verified");
    }
}
