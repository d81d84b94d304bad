use thiserror::Error;

/// Errors raised by the exact arithmetic and homology engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {0} exceeds the configured bound {1}")]
    CyclotomicOrderOutOfBounds(u64, u64),
    #[error("incompatible cyclotomic orders {0} and {1}")]
    IncompatibleCyclotomicOrders(u64, u64),
    #[error("coordinate space mismatch")]
    SpaceMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("span(B) is not contained in span(A)")]
    NotASubspace,
    #[error("group closure exceeds bound of {0} elements")]
    NotClosedWithinBound(usize),
    #[error("generator is not invertible")]
    NonInvertibleGenerator,
    #[error("index {0} does not name a singular point")]
    NotASingularPoint(u64),
    #[error("resonant weight: homotopy denominator vanishes on a non-fixed monomial")]
    ResonantWeight,
    #[error("size guard exceeded: chain space at (k={k}, n={n}) has dimension {dim}")]
    SizeGuardExceeded { k: usize, n: usize, dim: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid scenario: {0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
