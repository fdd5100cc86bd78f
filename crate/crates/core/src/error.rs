//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    BadPrime(u64),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("binomial C({n}, {k}) is out of range")]
    BinomialRange { n: u64, k: u64 },
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("ring map expects {expected} variable images, got {got}")]
    RingMapShape { expected: usize, got: usize },
    #[error("coefficient fields differ")]
    FieldMismatch,
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("ambient rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("tensor space of rank {needed} exceeds the guardrail {limit}; raise the limit to proceed")]
    GuardrailExceeded { needed: u128, limit: u128 },
    #[error("ideal image is not contained in the target ideal: generator {index}")]
    IdealNotMapped { index: usize },
    #[error("target ring has no variable named {0}")]
    MissingVariable(String),
    #[error("module data is inhomogeneous for the requested grading")]
    Inhomogeneous,
    #[error("grading has inconsistent weight lengths")]
    BadGrading,
    #[error("{0}")]
    Internal(String),
}
