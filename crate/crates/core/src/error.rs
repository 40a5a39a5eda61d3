//! Library-wide error type.

use thiserror::Error;

/// Errors produced by graph construction, algorithms, and file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on node {0} is not allowed")]
    SelfLoop(usize),

    #[error("edge weight must be positive, got {0}")]
    NonPositiveWeight(String),

    #[error("parallel edge between {u} and {v} (parallel-edge mode is disabled)")]
    ParallelEdge { u: usize, v: usize },

    #[error("node id {id} out of range (graph has {count} nodes)")]
    InvalidNode { id: usize, count: usize },

    #[error("edge id {id} out of range (graph has {count} edges)")]
    InvalidEdge { id: usize, count: usize },

    #[error("graph is disconnected: node {stranded} is not reachable from node 0")]
    Disconnected { stranded: usize },

    #[error("subgraph violation: edge ({u}, {v}) with weight {weight} is not present in the host graph")]
    SubgraphViolation { u: usize, v: usize, weight: String },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("enumeration budget exceeded: cycle length {requested} is above the cap {cap}")]
    EnumerationBudget { requested: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("generation failure: {0}")]
    GenerationFailure(String),

    #[error("regularization failure: {0}")]
    RegularizationFailure(String),

    #[error("certification failure: cycle of normalized weight {value} violates the girth bound {bound} (witness nodes: {witness})")]
    Certification {
        value: String,
        bound: String,
        witness: String,
    },

    #[error("surviving fraction is undefined: instance has no embedded edges")]
    UndefinedFraction,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
