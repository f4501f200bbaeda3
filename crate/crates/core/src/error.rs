//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relations do not generate an admissible ideal: {0}")]
    NonAdmissible(String),
    #[error("bimodule cannot be realized by a monomial triangular algebra: {0}")]
    NotMonomialRealizable(String),
    #[error("invalid Kupisch series: {0}")]
    BadKupisch(String),
    #[error("operation requires a nonzero module")]
    ZeroModule,
    #[error("depth limit {limit} exceeded")]
    DepthLimitExceeded { limit: usize },
    #[error("unsupported field: {0}")]
    FieldUnsupported(String),
    #[error("algebra is not a Nakayama algebra: {0}")]
    NotNakayama(String),
    #[error("complex is not perfect")]
    NotPerfect,
    #[error("complex is acyclic")]
    ZeroComplex,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
