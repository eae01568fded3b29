use thiserror::Error;

/// Errors raised by the library. Variants map onto the CLI exit codes:
/// precondition failures exit 2, ceilings exit 3, invariant failures exit 4.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial does not split over the rationals")]
    SplitFailure,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("form is not alternating: {0}")]
    NotAlternating(String),
    #[error("subspace is not isotropic")]
    NotIsotropic,
    #[error("form is degenerate")]
    NotSymplectic,
    #[error("pairing is not surjective onto the dual")]
    NotSurjective,
    #[error("enumeration ceiling exceeded: {needed} > {ceiling}")]
    CeilingExceeded { needed: String, ceiling: u64 },
    #[error("fit mismatch: {0}")]
    FitMismatch(String),
    #[error("no witness needed: stratum {i} is the minimal stratum")]
    NoWitnessNeeded { i: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("support collision: {0}")]
    SupportCollision(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("vanishing condition violated: {0}")]
    VanishingViolated(String),
    #[error("guard violation: {0}")]
    GuardViolation(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CeilingExceeded { .. } => 3,
            Error::InvariantViolation(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
