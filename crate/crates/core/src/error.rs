use crate::complex::Simplex;

/// Errors raised by the sweep and reconstruction machinery.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("simplex {0} is not in the complex")]
    NotFound(Simplex),

    /// The simplex spans the ambient space, so no direction is perpendicular to it.
    #[error("simplex {0} has no perpendicular direction (its affine hull is full-dimensional)")]
    NoPerpendicular(Simplex),

    #[error("query direction is not perpendicular to simplex {0}")]
    NotPerpendicular(Simplex),

    /// No candidate-ordering circle was found within the retry budget.
    #[error("no candidate-ordering circle found for {simplex} after {attempts} attempt(s): {reason}")]
    VerificationFailed {
        simplex: Simplex,
        attempts: usize,
        reason: String,
    },

    #[error("general position assumption violated: {0}")]
    AssumptionViolation(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("reconstruction mismatch: {0}")]
    ReconstructionMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
