use thiserror::Error;

/// Errors raised by the numerical core, the oracle and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix order must be at least 1")]
    EmptyMatrix,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },

    /// A pivot fell below the singularity threshold during factorization.
    #[error("matrix is singular to working precision (pivot {pivot:e} at step {step})")]
    Singular { step: usize, pivot: f64 },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("matrix order {n} exceeds the oracle cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid oracle cap {0}: must lie in 1..=24")]
    InvalidCap(usize),

    /// A valid sufficient condition fired on a matrix the oracle rejects.
    #[error("condition {condition} fired on sample {sample_id} but the oracle reports {oracle}")]
    SoundnessViolation {
        sample_id: usize,
        condition: String,
        oracle: String,
        /// The offending matrix in problem-file format.
        reproducer: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
