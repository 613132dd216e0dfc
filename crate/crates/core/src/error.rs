//! Error type shared across the crate.

use crate::report::Report;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("denominator of {num}/{den} is zero in the requested field")]
    ZeroDenominator { num: i64, den: i64 },

    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("ambient space mismatch: {0}")]
    AmbientMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("map is not balanced over the algebra: {0}")]
    NotBalanced(String),

    #[error("closure failure: {0}")]
    ClosureFailure(String),

    #[error("comparison map is not bijective: {0}")]
    NotBijective(String),

    #[error("characteristic {p} divides {n}")]
    CharacteristicDivides { p: u64, n: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("fragment is missing required data: {0}")]
    MissingFragmentData(String),

    #[error("{operation}: verification failed on: {}", report.failed_names().join(", "))]
    CheckFailed { operation: String, report: Report },
}

impl Error {
    /// The report attached to a failed verification, if any.
    pub fn report(&self) -> Option<&Report> {
        match self {
            Error::CheckFailed { report, .. } => Some(report),
            _ => None,
        }
    }
}
