use thiserror::Error;

/// Errors raised by argument validation across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("operands live over different graded spaces")]
    SpaceMismatch,
    #[error("operands use different truncation orders ({left} vs {right})")]
    TruncationMismatch { left: usize, right: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error(
        "element is not homogeneous of tensor order {expected} (found a word of order {found})"
    )]
    MixedOrder { expected: usize, found: usize },
    #[error("word of order {order} exceeds truncation order {truncation}")]
    BeyondTruncation { order: usize, truncation: usize },
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("invalid graded space: {0}")]
    InvalidSpace(String),
    #[error("inconsistent bracket entries for basis pair ({i}, {j})")]
    ConflictingBracket { i: usize, j: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("lower central series does not terminate within {steps} steps")]
    NotNilpotent { steps: usize },
    #[error("presentation fails the Lie algebra axioms: {0}")]
    InvalidPresentation(String),
    #[error("element is not a Lie polynomial: leftover word {0:?}")]
    NotLie(Vec<usize>),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
