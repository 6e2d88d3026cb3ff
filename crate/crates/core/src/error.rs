use thiserror::Error;

/// Errors raised across the crate.
///
/// `FatalInconsistency` is special: it is only produced when an exact check of a
/// proved statement fails, which means the implementation is wrong.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} is below the minimum {min} for this check")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("the zero polynomial has no Sturm sequence")]
    ZeroPolynomial,
    #[error("negative coefficient at exponent {0}")]
    NegativeCoefficient(usize),
    #[error("invalid tau: {0}")]
    InvalidTau(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("exponent {exponent} exceeds the configured cap {cap}")]
    ExponentOverflow { exponent: String, cap: u64 },
    #[error("input size {size} exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("fatal inconsistency: {0}")]
    FatalInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
