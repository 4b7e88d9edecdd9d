use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ground set: {0}")]
    GroundSet(String),

    #[error("ground set mismatch: {left} vs {right} nodes")]
    GroundMismatch { left: usize, right: usize },

    #[error("`{key}` is not an index of the {space} family")]
    NotAnIndex { space: &'static str, key: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("directed graph is not acyclic")]
    Cyclic,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("objective is not score equivalent: {0}")]
    NotScoreEquivalent(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("set function is not supermodular")]
    NotSupermodular,

    #[error("set function is not standardized")]
    NotStandardized,

    #[error("inequality is violated by point #{index}")]
    InvalidInequality { index: usize },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("polyhedron is unbounded or contains a line")]
    UnboundedPolyhedron,

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
