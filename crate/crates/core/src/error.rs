//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("operands live in different rings")]
    RingMismatch,

    #[error("shape or shift mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix entry at ({row},{col}) is not bihomogeneous of bidegree {expected}")]
    NotHomogeneous {
        row: usize,
        col: usize,
        expected: String,
    },

    #[error("input is not homogeneous: {0}")]
    InhomogeneousInput(String),

    #[error("colon with the zero ideal is rejected")]
    ColonByZero,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("hypotheses not satisfied: {0}")]
    HypothesesNotSatisfied(String),

    #[error("lift failed: {0}")]
    LiftFailed(String),

    #[error("evaluation point must not be identically zero")]
    ZeroPoint,

    #[error("invalid input ideal: {0}")]
    InvalidInput(String),

    #[error("random generation exhausted retries (seed {seed})")]
    RetriesExhausted { seed: u64 },

    #[error("resource limit hit: {0}")]
    ResourceLimit(String),
}
