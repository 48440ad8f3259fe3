use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank {rank} outside 1..={max}")]
    InvalidRank { rank: usize, max: usize },

    #[error("scale factor must be at least 1, got {0}")]
    NonPositiveScale(i64),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("isolated subgroup index {index} exceeds rank {rank}")]
    IsolatedIndex { index: usize, rank: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("element is not in the algebra: {0}")]
    NotMember(String),

    #[error("not an ideal: {0}")]
    NotIdeal(String),

    #[error("not finitely generated: {0}")]
    NotFinitelyGenerated(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("candidate bound exceeded: {needed} > {bound}")]
    BoundExceeded { needed: u64, bound: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}
