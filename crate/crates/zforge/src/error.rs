//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field order {p}^{k} exceeds the supported maximum 2^31")]
    FieldTooLarge { p: u64, k: u32 },

    #[error("no irreducible modulus of degree {k} over F_{p} found; the search is exhaustive, so this indicates a bug")]
    NoIrreducibleFound { p: u64, k: u32 },

    #[error("operands belong to different field specs")]
    SpecMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("point field is not the coefficient field or a prime-base extension of it")]
    IncompatibleField,

    #[error("point set contains duplicate points")]
    DuplicatePoints,

    #[error("enumeration of size {needed} exceeds the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("derived ell is zero: q = {q} is too small for s = {s}, t = {t}")]
    EllTooSmall { s: u32, t: u32, q: u64 },

    #[error("derived parameter {what} does not fit the supported integer range")]
    ParamTooLarge { what: &'static str },

    #[error("construction failed at index {index} after {retries} rejected candidates")]
    ConstructionFailed {
        index: usize,
        retries: u32,
        /// Rejected-candidate counts for the indices completed before the failure,
        /// followed by the failing index.
        retry_counts: Vec<u32>,
    },

    #[error("operation requires the graph-of-polynomial variant")]
    VariantMismatch,

    #[error("{what} = {value} is out of range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: u128,
        min: u128,
        max: u128,
    },

    #[error("n = {n} is too small: need n >= 2^{s}")]
    TooSmall { n: u128, s: u32 },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
