use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("expected {expected} polynomials, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not quasi-homogeneous for weights {weights:?}")]
    NotQuasiHomogeneous { weights: Vec<u32> },

    #[error("not an isolated quasi-homogeneous singularity for these weight data")]
    NotIsolated,

    #[error(
        "resource budget exceeded at weight {weight}: slice needs ~{needed} bytes, budget is {budget} bytes"
    )]
    Budget {
        weight: i64,
        needed: u64,
        budget: u64,
    },

    #[error("series factor has s-exponent 0 and would not truncate")]
    NonTruncating,

    #[error("unknown du Val label `{0}`")]
    UnknownLabel(String),

    #[error(
        "hyperplane normals must span the ambient space: rank {rank} but {dim} rows"
    )]
    RankDeficient { rank: usize, dim: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}
