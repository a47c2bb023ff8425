use thiserror::Error;

/// Errors raised during graph construction, normalization, or analysis.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("negative weight {weight} on edge ({src}, {dst})")]
    NegativeWeight { src: String, dst: String, weight: f64 },

    #[error("non-finite weight on edge ({src}, {dst})")]
    NonFiniteWeight { src: String, dst: String },

    #[error("duplicate edge ({src}, {dst}) with conflicting weight")]
    DuplicateEdge { src: String, dst: String },

    #[error("self-loop on node {node}")]
    SelfLoop { node: String },

    #[error("node {node} out of range (graph has {n_nodes} nodes)")]
    NodeOutOfRange { node: usize, n_nodes: usize },

    #[error("degenerate weight matrix: no strictly positive weight")]
    DegenerateWeights,

    #[error("edge ({src}, {dst}) already exists")]
    EdgeExists { src: usize, dst: usize },

    #[error("node sets differ: {left} vs {right} nodes")]
    NodeSetMismatch { left: usize, right: usize },

    #[error("edge attribute '{name}' not present on all edges")]
    MissingAttribute { name: String },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
