use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse `{0}` as a fraction")]
    BadFraction(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("value does not fit in a machine integer: {0}")]
    Overflow(String),

    #[error("points {0} and {1} coincide")]
    PointCollision(usize, usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The ring is `k` itself (negative degree).
    #[error("the canonical ring is trivial (negative degree)")]
    TrivialRing,

    #[error("{0} is not a prime below 2^61")]
    NotPrime(u64),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("generators incomplete in degree {degree}: expected dimension {expected}, spanned {found}")]
    GeneratorsIncomplete {
        degree: usize,
        expected: usize,
        found: usize,
    },

    #[error("candidates do not complete the span ({missing} dimensions missing)")]
    IncompleteSpan { missing: usize },

    #[error("instance too large for the brute-force oracle: {0}")]
    TooLarge(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}
