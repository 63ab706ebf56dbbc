use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("negative value {0} is not a max-algebra scalar")]
    NegativeScalar(String),

    #[error("cannot parse {0:?} as a nonnegative rational")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("no critical structure: the maximum cycle mean is zero")]
    NoCriticalStructure,

    #[error("zero circulant has no critical structure")]
    ZeroCirculant,

    #[error("Kleene star requires maximum cycle mean at most 1")]
    KleeneStarUndefined,

    #[error("ultimate periodicity not guaranteed: {0}")]
    PeriodicityNotGuaranteed(String),

    #[error("cyclicity undefined: {0}")]
    CyclicityUndefined(String),

    #[error("maximum cycle mean is irrational and the matrix is too large for cycle enumeration (n = {0})")]
    IrrationalCycleMean(usize),

    #[error("decomposition undefined: upper bound of coordinate {0} is zero")]
    ZeroUpperBound(usize),

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
}
