use thiserror::Error;

use crate::face::SimplexFace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero polynomial has no coefficient bitsize")]
    ZeroPolynomial,
    #[error("expected {expected} variables, got {got}")]
    VariableCount { expected: usize, got: usize },
    #[error("both Sylvester inputs are constant")]
    ConstantSylvesterInputs,
    #[error("resultant vanishes identically in Z (inputs share a factor)")]
    DegenerateResultant,
    #[error("interpolated resultant coefficient {0} is not an integer")]
    NonIntegralInterpolation(String),
    #[error("matrix of dimension {0} is too large for cofactor expansion")]
    MatrixTooLarge(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("value is not a root of the given polynomial")]
    NotARoot,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("restriction to face {0} is constant; every point of the face is critical")]
    WholeFaceCritical(SimplexFace),
    #[error("RUR has {got} coordinate polynomials, face needs {expected}")]
    RurDimension { expected: usize, got: usize },
    #[error("RUR is invalid: {0}")]
    InvalidRur(String),
    #[error("refinement budget exhausted: {0}")]
    RefinementExhausted(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
