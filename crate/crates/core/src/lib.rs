//! Sublinear-query s-t minimum cut on weighted undirected graphs with
//! oracle access, with the quantum primitives simulated classically at the
//! query-cost level.
//!
//! Pipeline: build an ε-cut sparsifier, route a max s-t flow and subtract
//! it, take a 3εn-strong partition of the remainder, learn the contracted
//! graph's edges by threshold Grover search, solve max-flow there and expand
//! the shore. Every stage is checkable against exhaustive solvers at small n.

pub mod error;
pub mod exact;
pub mod format;
pub mod graph;
pub mod instances;
pub mod maxflow;
pub mod oracle;
pub mod pipeline;
pub mod report;
pub mod sparsify;
pub mod strength;

pub use error::{Error, Result};
pub use graph::{Partition, VertexSet, WeightedGraph};
pub use oracle::{CostLedger, GraphOracle, ListOracle, MatrixOracle, OracleKind};
pub use pipeline::{st_min_cut, PipelineConfig, PipelineResult};
