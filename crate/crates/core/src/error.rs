use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a nonnegative integer, got {0}")]
    NegativeArgument(i64),

    #[error("multinomial parts {parts} sum to {sum}, expected {mu}")]
    PartsSumMismatch { mu: i64, sum: i64, parts: String },

    #[error("cannot parse `{0}` as a rational (expected `p` or `p/q`)")]
    ParseRational(String),

    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),

    #[error("cannot parse `{0}` as a list of indices")]
    ParseIndices(String),

    #[error("index list must not be empty")]
    EmptyIndices,

    #[error("negative index {0} in index list")]
    NegativeIndex(i64),

    #[error("index {0} must be at least 1")]
    NonPositiveIndex(i64),

    #[error("expected {expected} indices, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("recurrence depth must be at least 1, got {0}")]
    InvalidDepth(i64),

    #[error("k + l must be at least 2, got k = {k}, l = {l}")]
    IndexSumTooSmall { k: i64, l: i64 },

    #[error("index sum {0} is odd; the even-sum formula does not apply")]
    OddIndexSum(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
