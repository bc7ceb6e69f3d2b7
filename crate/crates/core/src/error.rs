use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(u64, u64),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("weight {w} out of range [0, {max}]")]
    WeightOutOfRange { w: u64, max: u64 },

    #[error("matrix is zero: no pivot can be selected")]
    ZeroMatrix,

    #[error("matrix is rank deficient: {0} rows reduce to zero")]
    RankDeficient(usize),

    #[error("requested block shape unreachable after {0} permutation retries")]
    ShapeUnreachable(usize),

    #[error("iteration budget of {0} exhausted without finding a solution")]
    IterationBudgetExhausted(u64),

    #[error("infeasible profile: {0}")]
    InfeasibleProfile(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("vector is not a solution of the instance")]
    NonSolution,
}

pub type Result<T> = std::result::Result<T, Error>;
