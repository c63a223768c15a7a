use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("point {index} is the zero vector")]
    ZeroVector { index: usize },

    #[error("points {first} and {second} are the same projective point")]
    DuplicatePoint { first: usize, second: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("field too small: {0}")]
    FieldTooSmall(String),

    #[error("configuration is degenerate (lies on a hyperplane)")]
    Degenerate,

    #[error("linear form vanishes at point {index}; not a nonzerodivisor")]
    NotNonzerodivisor { index: usize },

    #[error("element index {index} out of range for ground set of size {ground}")]
    ElementOutOfRange { index: usize, ground: usize },

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rank axiom violated: {0}")]
    RankAxiom(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
