use thiserror::Error;

use crate::hypergraph::{EdgeKey, PathDefect};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("malformed edge: {0}")]
    MalformedEdge(String),

    #[error("rank {rank} out of range (total {total})")]
    RankOutOfRange { rank: u64, total: u64 },

    #[error("invalid partite family: {0}")]
    InvalidFamily(String),

    #[error("class {part} has {available} vertices, needs {needed}")]
    InsufficientPart {
        part: String,
        needed: usize,
        available: usize,
    },

    #[error("{what} = {value} is out of range: {expected}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        expected: String,
    },

    #[error("n = {n} is below the guaranteed threshold {required}")]
    BelowThreshold { n: usize, required: u64 },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("edge {edge} has color {found}, expected {expected}")]
    WrongColor {
        edge: EdgeKey,
        expected: u16,
        found: u16,
    },

    #[error("no guarantee below threshold: {0}")]
    NoGuarantee(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid loose path: {0}")]
    InvalidPath(PathDefect),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
