//! Integral maximum s-t flow on undirected graphs (blocking-flow backend),
//! residual-based min-cut shore extraction, cycle cancellation to make flows
//! non-circular, and the total-flow-weight bound check.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{cut_weight, VertexSet, WeightedGraph};

/// An integral s-t flow. Each undirected edge carries flow in at most one
/// direction; the stored value is signed relative to the canonical
/// orientation from lower to higher vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    s: u32,
    t: u32,
    value: u64,
    // key (u, v) with u < v; positive means flow u -> v
    flows: BTreeMap<(u32, u32), i64>,
}

impl Flow {
    pub fn zero(s: u32, t: u32) -> Self {
        Flow {
            s,
            t,
            value: 0,
            flows: BTreeMap::new(),
        }
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn set_value(&mut self, v: u64) {
        self.value = v;
    }

    /// Flow from `a` to `b` (positive if the edge is used in that direction).
    pub fn edge_flow(&self, a: u32, b: u32) -> i64 {
        let key = (a.min(b), a.max(b));
        let f = self.flows.get(&key).copied().unwrap_or(0);
        if a < b {
            f
        } else {
            -f
        }
    }

    /// Sets the flow on `{a, b}` to `x` units from `a` to `b`.
    pub fn set_edge_flow(&mut self, a: u32, b: u32, x: i64) {
        let key = (a.min(b), a.max(b));
        let signed = if a < b { x } else { -x };
        if signed == 0 {
            self.flows.remove(&key);
        } else {
            self.flows.insert(key, signed);
        }
    }

    pub fn support_size(&self) -> usize {
        self.flows.len()
    }

    /// Canonical (u, v) pairs with nonzero flow, ascending.
    pub fn support_edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.flows.keys().copied()
    }

    /// Σ_e |F(e)|, the total weight of the flow.
    pub fn total_weight(&self) -> u64 {
        self.flows.values().map(|f| f.unsigned_abs()).sum()
    }

    /// Checks capacity and conservation against `g`.
    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        let mut net = vec![0i64; g.n()];
        for (&(u, v), &f) in &self.flows {
            if f.unsigned_abs() > g.weight(u, v) {
                return Err(Error::FlowExceedsCapacity(u, v));
            }
            net[u as usize] -= f;
            net[v as usize] += f;
        }
        for v in 0..g.n() as u32 {
            let expect = if v == self.s {
                -(self.value as i64)
            } else if v == self.t {
                self.value as i64
            } else {
                0
            };
            if net[v as usize] != expect {
                return Err(Error::InternalContract(format!(
                    "flow conservation violated at vertex {v}"
                )));
            }
        }
        Ok(())
    }
}

struct Arc {
    to: u32,
    cap: u64,
    rev: usize,
}

struct Dinic {
    arcs: Vec<Vec<Arc>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            arcs: (0..n).map(|_| Vec::new()).collect(),
            level: vec![-1; n],
            iter: vec![0; n],
        }
    }

    fn add_undirected(&mut self, u: usize, v: usize, cap: u64) {
        let ru = self.arcs[v].len();
        let rv = self.arcs[u].len();
        self.arcs[u].push(Arc {
            to: v as u32,
            cap,
            rev: ru,
        });
        self.arcs[v].push(Arc {
            to: u as u32,
            cap,
            rev: rv,
        });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for a in &self.arcs[v] {
                if a.cap > 0 && self.level[a.to as usize] < 0 {
                    self.level[a.to as usize] = self.level[v] + 1;
                    queue.push_back(a.to as usize);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, limit: u64) -> u64 {
        if v == t {
            return limit;
        }
        while self.iter[v] < self.arcs[v].len() {
            let i = self.iter[v];
            let (to, cap) = (self.arcs[v][i].to as usize, self.arcs[v][i].cap);
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    let rev = self.arcs[v][i].rev;
                    self.arcs[v][i].cap -= pushed;
                    self.arcs[to][rev].cap += pushed;
                    return pushed;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn run(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0u64;
        while self.bfs(s, t) {
            self.iter.fill(0);
            loop {
                let pushed = self.dfs(s, t, u64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

/// Maximum s-t flow in `g`; deterministic given `g` (arcs are visited in
/// ascending edge order).
pub fn max_flow(g: &WeightedGraph, s: u32, t: u32) -> Result<Flow> {
    if s == t {
        return Err(Error::SourceIsSink);
    }
    let mut dinic = Dinic::new(g.n());
    let edge_list: Vec<(u32, u32, u64)> = g.edges().collect();
    // arc index of the forward (u -> v) copy of edge i, in insertion order
    let mut forward: Vec<(usize, usize)> = Vec::with_capacity(edge_list.len());
    for &(u, v, w) in &edge_list {
        forward.push((u as usize, dinic.arcs[u as usize].len()));
        dinic.add_undirected(u as usize, v as usize, w);
    }
    let value = dinic.run(s as usize, t as usize);
    let mut flow = Flow::zero(s, t);
    flow.set_value(value);
    for (i, &(u, v, w)) in edge_list.iter().enumerate() {
        let (from, idx) = forward[i];
        let residual = dinic.arcs[from][idx].cap;
        // residual of u->v lies in [0, 2w]; net flow along u->v is w - residual
        let net = w as i64 - residual as i64;
        flow.set_edge_flow(u, v, net);
    }
    debug_assert!(flow.validate(g).is_ok());
    Ok(flow)
}

/// Cancels directed cycles in the support of `f` until none remain. The value
/// is preserved and no edge's |F(e)| increases.
pub fn make_noncircular(f: &Flow) -> Flow {
    let mut flow = f.clone();
    loop {
        // directed support: arc a -> b whenever flow runs a -> b
        let mut out: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (u, v) in flow.support_edges() {
            let x = flow.edge_flow(u, v);
            if x > 0 {
                out.entry(u).or_default().push(v);
            } else {
                out.entry(v).or_default().push(u);
            }
        }
        let Some(cycle) = find_directed_cycle(&out) else {
            break;
        };
        let slack = cycle
            .windows(2)
            .map(|p| flow.edge_flow(p[0], p[1]))
            .min()
            .expect("cycle has edges");
        debug_assert!(slack > 0);
        for p in cycle.windows(2) {
            let cur = flow.edge_flow(p[0], p[1]);
            flow.set_edge_flow(p[0], p[1], cur - slack);
        }
    }
    flow
}

/// Returns a directed cycle as v0, v1, ..., v0 if one exists.
fn find_directed_cycle(out: &BTreeMap<u32, Vec<u32>>) -> Option<Vec<u32>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color: BTreeMap<u32, Color> = out.keys().map(|&v| (v, Color::White)).collect();
    for (&u, tos) in out {
        for &v in tos {
            color.entry(v).or_insert(Color::White);
        }
        let _ = u;
    }
    let starts: Vec<u32> = color.keys().copied().collect();
    let empty: Vec<u32> = Vec::new();
    for start in starts {
        if color[&start] != Color::White {
            continue;
        }
        // iterative DFS tracking the gray path
        let mut stack: Vec<(u32, usize)> = vec![(start, 0)];
        color.insert(start, Color::Gray);
        let mut path = vec![start];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            let succ = out.get(&v).unwrap_or(&empty);
            if *i < succ.len() {
                let w = succ[*i];
                *i += 1;
                match color[&w] {
                    Color::White => {
                        color.insert(w, Color::Gray);
                        stack.push((w, 0));
                        path.push(w);
                    }
                    Color::Gray => {
                        let pos = path.iter().position(|&x| x == w).expect("gray on path");
                        let mut cycle = path[pos..].to_vec();
                        cycle.push(w);
                        return Some(cycle);
                    }
                    Color::Black => {}
                }
            } else {
                color.insert(v, Color::Black);
                stack.pop();
                path.pop();
            }
        }
    }
    None
}

/// Shore of a minimum s-t cut: vertices reachable from `s` in the residual
/// graph of a maximum flow. Errors if `f` is not maximum for (g, s, t).
pub fn min_cut_shore_from_residual(g: &WeightedGraph, f: &Flow, s: u32) -> Result<VertexSet> {
    let n = g.n();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (u, v, w) in g.edges() {
        let net = f.edge_flow(u, v); // positive = u -> v
        if (w as i64 - net) > 0 {
            adj[u as usize].push(v);
        }
        if (w as i64 + net) > 0 {
            adj[v as usize].push(u);
        }
    }
    let mut shore = VertexSet::empty(n);
    shore.insert(s);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v as usize] {
            if !shore.contains(w) {
                shore.insert(w);
                queue.push_back(w);
            }
        }
    }
    if shore.contains(f.t()) {
        return Err(Error::InternalContract(
            "residual path from s to t: flow is not maximum".into(),
        ));
    }
    let cw = cut_weight(g, &shore)?;
    if cw != f.value() {
        return Err(Error::InternalContract(format!(
            "residual shore cuts weight {cw}, flow value {}",
            f.value()
        )));
    }
    Ok(shore)
}

/// Outcome of checking Σ|F(e)| <= 10 n sqrt(f W) for a non-circular flow.
#[derive(Debug, Clone, Copy)]
pub struct FlowWeightCheck {
    pub total_weight: u64,
    pub bound: f64,
    pub ratio: f64,
    pub pass: bool,
}

/// Checks the total-weight bound for a non-circular flow; the comparison is
/// done in exact integer arithmetic (total² vs 100 n² f W).
pub fn check_flow_weight_bound(f: &Flow, n: usize, max_w: u64) -> FlowWeightCheck {
    let total = f.total_weight();
    let lhs = (total as u128) * (total as u128);
    let rhs = 100u128 * (n as u128) * (n as u128) * (f.value() as u128) * (max_w as u128);
    let bound = 10.0 * n as f64 * ((f.value() as f64) * (max_w as f64)).sqrt();
    let ratio = if bound > 0.0 {
        total as f64 / bound
    } else if total == 0 {
        0.0
    } else {
        f64::INFINITY
    };
    FlowWeightCheck {
        total_weight: total,
        bound,
        ratio,
        pass: lhs <= rhs,
    }
}
