use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("{what} must be > 0 (got {value} at index {index})")]
    NonPositiveEntry {
        what: &'static str,
        index: usize,
        value: f64,
    },

    #[error("{what} must be >= 0 (got {value} at index {index})")]
    NegativeEntry {
        what: &'static str,
        index: usize,
        value: f64,
    },

    #[error("exponent p must be nonzero")]
    ZeroExponent,

    #[error("value {value} is outside the domain of f ({domain})")]
    OutsideDomain { value: f64, domain: &'static str },

    #[error("mean spec is not pool-valid: {0}")]
    InvalidSpec(String),

    #[error("asset index {index} out of range for a {n}-asset pool")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid trade: {0}")]
    InvalidTrade(String),

    #[error("infeasible trade: {0}")]
    Infeasible(String),

    #[error("trade rejected: |tau - C| = {residual:e} exceeds {tol:e} * C (C = {invariant})")]
    Rejected {
        residual: f64,
        tol: f64,
        invariant: f64,
    },

    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("fit error: {0}")]
    Fit(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("row at eps = {eps:e} violates invariant: {reason}")]
    RowInvariant { eps: f64, reason: String },
}
