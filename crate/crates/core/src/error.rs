use thiserror::Error;

/// Errors raised by the operator algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QpsError {
    #[error("phase order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },

    #[error("cannot promote phase of order {from} to order {to}: not a multiple")]
    InvalidPromotion { from: u64, to: u64 },

    #[error("phase order must be positive")]
    ZeroOrder,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: i64, dim: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("matrix has {got} entries, expected {expected}")]
    EntryCount { expected: usize, got: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("symmetric labels require odd dimension, got {0}")]
    SymmetricLabelsNeedOdd(usize),

    #[error("repeated prime factors unsupported: {n} = {factors:?}")]
    RepeatedPrimeFactors { n: u64, factors: Vec<u64> },

    #[error("factor index {index} out of range ({count} factors)")]
    FactorIndex { index: usize, count: usize },

    #[error("antisymmetric vacuum selection requires odd N, got {0}")]
    EvenDimension(usize),

    #[error("Gram matrix is numerically singular (basis kind {0})")]
    SingularGram(String),
}

pub type Result<T> = std::result::Result<T, QpsError>;
