use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("trivial shore")]
    TrivialShore,
    #[error("weight sum overflow")]
    Overflow,
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(u32, usize),
    #[error("flow exceeds capacity on edge ({0}, {1})")]
    FlowExceedsCapacity(u32, u32),
    #[error("source equals sink")]
    SourceIsSink,
    #[error("instance exceeds oracle bound: n = {n}, limit {limit}")]
    OracleBound { n: usize, limit: usize },
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("internal contract violated: {0}")]
    InternalContract(String),
    #[error("pipeline failed after {0} attempts")]
    RetriesExhausted(u32),
    #[error("sparsifier bounds still violated after {0} attempts")]
    SparsifierResample(u32),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
