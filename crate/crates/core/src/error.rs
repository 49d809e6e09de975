use thiserror::Error;

/// Errors produced by class construction, validation and the certificate checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid number of marked points {0} (expected 1..={max})", max = crate::subset::MAX_POINTS)]
    InvalidDimension(i64),
    #[error("label {label} out of range 1..={n}")]
    InvalidLabel { label: i64, n: usize },
    #[error("dimension mismatch: {left} vs {right} marked points")]
    DimensionMismatch { left: usize, right: usize },
    #[error("signature entries sum to {0}, expected 0")]
    NotZeroSum(i64),
    #[error("signature is identically zero")]
    DegenerateSignature,
    #[error("signature is not primitive (gcd {0})")]
    NotPrimitive(u64),
    #[error("signature has a zero entry at position {0}; drop zero entries first")]
    ZeroEntry(usize),
    #[error("operation is not supported for two marked points")]
    UnsupportedForTwoPoints,
    #[error("operation requires {expected} marked points, got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("class is not invariant under relabeling: coefficients of size-{0} subsets differ")]
    NotSymmetric(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid keep map: {0}")]
    InvalidKeepMap(String),
    #[error("argument must be positive, got {0}")]
    NonPositive(i64),
    #[error("{t} does not divide {modulus}")]
    NotADivisor { t: u64, modulus: u64 },
    #[error("modulus {0} exceeds the per-call cap")]
    ModulusTooLarge(u64),
    #[error("invalid age profile: {0}")]
    InvalidProfile(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
