use thiserror::Error;

use crate::constructions::Inequality;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The unit ideal was passed where a quotient ring is formed.
    #[error("quotient ring is zero: the unit ideal is not proper")]
    ImproperIdeal,

    #[error("total degree {degree} exceeds the configured maximum of {limit}")]
    DegreeGuard { degree: u64, limit: u64 },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("constraint violated: {0}")]
    Constraint(Inequality),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid field characteristic {0}: expected 0 or a prime")]
    InvalidCharacteristic(u64),

    #[error("invalid ring context: {0}")]
    InvalidContext(String),
}
