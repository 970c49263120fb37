use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("invalid branch p={p}, q={q}: need 0 < p < q and gcd(p, q) = 1")]
    InvalidBranch { p: u64, q: u64 },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("continued fraction has no terms")]
    EmptyExpansion,

    #[error("continued fraction term {0} is below 2")]
    ExpansionTermTooSmall(i64),

    #[error("invalid weighted type: {0}")]
    InvalidType(String),

    #[error("a-invariant {0} is negative")]
    NegativeAInvariant(i64),

    #[error("a-invariant {0} is out of range for this operation")]
    AlphaOutOfRange(i64),

    #[error("Hilbert coefficient at degree {degree} is negative ({value})")]
    NegativeHilbertCoefficient { degree: u64, value: i128 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("divisor degree {0} is not positive")]
    NotAmple(String),

    #[error("type {0} fails the normality filter")]
    NotNormal(String),

    #[error("type {0} admits no Gorenstein divisor realization")]
    NoRealization(String),

    #[error("fixture parse error on line {line}: {message}")]
    Fixture { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
