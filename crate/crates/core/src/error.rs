use thiserror::Error;

/// Errors raised by constructions in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} out of range 1..{arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid face: {0}")]
    InvalidFace(String),
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("basepoint mismatch")]
    BasepointMismatch,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("label {0:?} is not a point of X")]
    UnknownLabel(Vec<f64>),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    ResourceLimit { n: usize, cap: usize },
    #[error("sampler returned arity {got}, expected {requested}")]
    SamplerArity { requested: usize, got: usize },
    #[error("harness misconfigured: {0}")]
    Harness(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_index(index: usize, arity: usize) -> Result<()> {
    if index == 0 || index > arity {
        Err(Error::IndexOutOfRange { index, arity })
    } else {
        Ok(())
    }
}
