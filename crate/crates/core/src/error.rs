use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in 2..=251")]
    NotPrime(u32),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("ring has {0} variables; supported range is 1..=12")]
    VariableCount(usize),

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("generator is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("zero ring: the ideal is the unit ideal")]
    ZeroRing,

    #[error("dimension too small: requested {requested}, quotient has dimension {actual}")]
    DimensionTooSmall { requested: usize, actual: usize },

    #[error("supplied prime #{index} ({prime}) does not contain the ideal")]
    PrimeDoesNotContain { index: usize, prime: String },

    #[error("supplied prime #{0} is not a proper homogeneous ideal")]
    ImproperPrime(usize),

    #[error("profile is not certified reduced: {0}")]
    Uncertified(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("invalid point set: {0}")]
    InvalidPoints(String),

    #[error("subcode dimension {ell} exceeds k = {k}")]
    SubcodeDimension { ell: usize, k: usize },

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
