use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("regularity: mu = -n-1/2 with n = {n}")]
    SingularMu { n: usize },
    #[error("hahn operator undefined for (q, omega) = (1, 0)")]
    DegenerateHahn,
    #[error("index {n} outside the admissible range (minimum {min})")]
    IndexOutOfRange { n: i64, min: i64 },
    #[error("recurrence needs {needed} coefficients of kind {kind}, has {available}")]
    InsufficientCoefficients {
        kind: &'static str,
        needed: usize,
        available: usize,
    },
    #[error("regularity: gamma_{n} vanishes")]
    VanishingGamma { n: usize },
    #[error("basis element {index} is not monic of degree {index}")]
    NotGradedMonic { index: usize },
    #[error("polynomial of degree {degree} needs a basis of length > {degree}, got {len}")]
    BasisTooShort { degree: usize, len: usize },
    #[error("theta_{n} undefined: parameter hits the exclusion theta = -n +/- mu(-1)^n")]
    ThetaExcluded { n: i64 },
    #[error("vanishing denominator at n = {n} in {context}")]
    VanishingDenominator { n: i64, context: &'static str },
    #[error("excluded parameters: {0}")]
    ExcludedParameters(String),
    #[error("affine scale a must be nonzero")]
    ZeroScale,
    #[error("degree mismatch: expected {expected}, found {found:?}")]
    DegreeMismatch { expected: usize, found: Option<usize> },
    #[error("sequence too short: index {index} requested, length {len}")]
    SequenceTooShort { index: usize, len: usize },
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
