use thiserror::Error;

/// Errors shared by every module in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed edge-list input, with the offending 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("node index {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("graph has {nodes} nodes, above the canonical-labeling bound of {bound}")]
    CanonBound { nodes: usize, bound: usize },

    /// Invalid argument value or violated precondition.
    #[error("{0}")]
    Parameter(String),

    /// Moment order not reachable from the given observation radius.
    #[error("moment order k={k} exceeds k_max={k_max} for radius r={r}")]
    Capability { k: usize, k_max: usize, r: usize },

    #[error("graph is disconnected")]
    Disconnected,

    /// Census refused rather than enumerating an unbounded subgraph space.
    #[error("census refused: host has {edges} edges, above the {limit}-edge guard at k={k}")]
    CensusTooLarge { edges: usize, limit: usize, k: usize },

    #[error("coefficient table covers k up to {covered}, but k={k} was requested")]
    MissingCoefficients { k: usize, covered: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
