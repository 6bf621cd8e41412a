use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector is not a curve class")]
    Zero,
    #[error("vector ({0}, {1}) is not primitive")]
    NonPrimitive(String, String),
    #[error("curves coincide; expected two distinct curves")]
    SameCurve,
    #[error("curve {0} appears more than once in the collection")]
    DuplicateCurve(String),
    #[error("twist exponent must be positive")]
    ZeroExponent,
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(String),
    #[error("collection has {0} curves; at most 3 are supported here")]
    TooManyCurves(usize),
    #[error("twist powers are not uniform")]
    MixedPowers,
    #[error("pair ({0}, {1}) does not satisfy exponent * intersection = 2")]
    BadPair(usize, usize),
    #[error("exponent {0} is not a multiple of 4")]
    NotMultipleOfFour(u64),
    #[error("generator index {0} out of range")]
    BadIndex(usize),
    #[error("modulus {0} is out of range")]
    BadModulus(u64),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("transcript replay failed: {0}")]
    Replay(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
