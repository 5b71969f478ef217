//! Plain-text graph files.
//!
//! ```text
//! # comment
//! p <n> <m> <W>
//! e <u> <v> <w>      (1-indexed endpoints; parallel lines sum)
//! o <v> <n1> <n2> …  (optional per-vertex neighbor order, 1-indexed)
//! ```
//!
//! The header's m and W are checked against the edge lines on parse.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A parsed graph file: the graph plus an optional explicit neighbor order
/// (for the adjacency-list oracle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: WeightedGraph,
    pub order: Option<Vec<Vec<u32>>>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn field<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what}: {tok:?}")))
}

/// 1-indexed vertex token to a 0-based id, range-checked against n.
fn vertex(tok: &str, n: usize, line: usize) -> Result<u32> {
    let v: u64 = field(tok, line, "vertex")?;
    if v < 1 || v > n as u64 {
        return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok((v - 1) as u32)
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut header: Option<(usize, usize, u64)> = None;
    let mut graph = WeightedGraph::new(0);
    let mut order: Option<Vec<Option<Vec<u32>>>> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate header"));
                }
                if toks.len() != 4 {
                    return Err(parse_err(lineno, "header needs: p n m W"));
                }
                let n: usize = field(toks[1], lineno, "n")?;
                let m: usize = field(toks[2], lineno, "m")?;
                let w: u64 = field(toks[3], lineno, "W")?;
                if n < 1 {
                    return Err(parse_err(lineno, "n must be >= 1"));
                }
                graph = WeightedGraph::new(n);
                header = Some((n, m, w));
            }
            "e" => {
                let (n, _, _) = header.ok_or_else(|| parse_err(lineno, "edge before header"))?;
                if toks.len() != 4 {
                    return Err(parse_err(lineno, "edge needs: e u v w"));
                }
                let u = vertex(toks[1], n, lineno)?;
                let v = vertex(toks[2], n, lineno)?;
                let w: u64 = field(toks[3], lineno, "weight")?;
                if w < 1 {
                    return Err(parse_err(lineno, "edge weight must be >= 1"));
                }
                graph
                    .add_edge(u, v, w)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
            }
            "o" => {
                let (n, _, _) = header.ok_or_else(|| parse_err(lineno, "order before header"))?;
                if toks.len() < 2 {
                    return Err(parse_err(lineno, "order needs: o v neighbors…"));
                }
                let v = vertex(toks[1], n, lineno)?;
                let mut list = Vec::with_capacity(toks.len() - 2);
                for tok in &toks[2..] {
                    list.push(vertex(tok, n, lineno)?);
                }
                let slot = &mut order.get_or_insert_with(|| vec![None; n])[v as usize];
                if slot.is_some() {
                    return Err(parse_err(lineno, format!("duplicate order for vertex {}", v + 1)));
                }
                *slot = Some(list);
            }
            other => return Err(parse_err(lineno, format!("unknown record {other:?}"))),
        }
    }
    let (_, m, w) = header.ok_or_else(|| parse_err(text.lines().count(), "missing header"))?;
    if graph.m() != m {
        return Err(parse_err(
            0,
            format!("header says m = {m}, edge lines give {}", graph.m()),
        ));
    }
    if graph.max_weight() != w {
        return Err(parse_err(
            0,
            format!("header says W = {w}, edge lines give {}", graph.max_weight()),
        ));
    }
    let order = match order {
        None => None,
        Some(slots) => {
            let adj = graph.adjacency();
            let mut full = Vec::with_capacity(slots.len());
            for (v, slot) in slots.into_iter().enumerate() {
                // omitted vertices fall back to ascending order
                full.push(slot.unwrap_or_else(|| adj[v].iter().map(|&(u, _)| u).collect()));
            }
            Some(full)
        }
    };
    Ok(GraphFile { graph, order })
}

pub fn emit_graph(file: &GraphFile) -> String {
    let g = &file.graph;
    let mut out = String::new();
    let _ = writeln!(out, "p {} {} {}", g.n(), g.m(), g.max_weight());
    for (u, v, w) in g.edges() {
        let _ = writeln!(out, "e {} {} {}", u + 1, v + 1, w);
    }
    if let Some(order) = &file.order {
        for (v, list) in order.iter().enumerate() {
            let _ = write!(out, "o {}", v + 1);
            for &u in list {
                let _ = write!(out, " {}", u + 1);
            }
            let _ = writeln!(out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_random;

    #[test]
    fn parse_simple() {
        let f = parse_graph("# path\np 3 2 1\ne 1 2 1\ne 2 3 1\n").unwrap();
        assert_eq!(f.graph.n(), 3);
        assert_eq!(f.graph.weight(0, 1), 1);
        assert_eq!(f.graph.weight(1, 2), 1);
        assert!(f.order.is_none());
    }

    #[test]
    fn parallel_edges_sum_in_file() {
        let f = parse_graph("p 2 1 3\ne 1 2 1\ne 2 1 2\n").unwrap();
        assert_eq!(f.graph.weight(0, 1), 3);
    }

    #[test]
    fn header_mismatch_rejected() {
        assert!(parse_graph("p 3 2 1\ne 1 2 1\n").is_err()); // m wrong
        assert!(parse_graph("p 3 1 2\ne 1 2 1\n").is_err()); // W wrong
    }

    #[test]
    fn bad_records_carry_line_numbers() {
        let err = parse_graph("p 3 1 1\ne 1 4 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_graph("p 2 0 0\nq foo\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse_graph("e 1 2 1\n").is_err()); // before header
        assert!(parse_graph("p 2 1 1\ne 1 1 1\n").is_err()); // self loop
        assert!(parse_graph("p 2 1 0\ne 1 2 0\n").is_err()); // zero weight
    }

    #[test]
    fn order_lines() {
        let f = parse_graph("p 3 2 1\ne 1 2 1\ne 1 3 1\no 1 3 2\n").unwrap();
        let order = f.order.unwrap();
        assert_eq!(order[0], vec![2, 1]);
        assert_eq!(order[1], vec![0]); // defaulted ascending
        assert_eq!(order[2], vec![0]);
    }

    #[test]
    fn round_trip() {
        for seed in 0..10u64 {
            let g = gen_random(9, 0.5, 5, seed).unwrap();
            let file = GraphFile {
                graph: g,
                order: None,
            };
            assert_eq!(parse_graph(&emit_graph(&file)).unwrap(), file);
        }
        let g = gen_random(6, 0.8, 2, 1).unwrap();
        let order: Vec<Vec<u32>> = g
            .adjacency()
            .into_iter()
            .map(|l| l.into_iter().map(|(u, _)| u).rev().collect())
            .collect();
        let file = GraphFile {
            graph: g,
            order: Some(order),
        };
        assert_eq!(parse_graph(&emit_graph(&file)).unwrap(), file);
    }
}
