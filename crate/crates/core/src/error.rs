use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid factor type: {0}")]
    InvalidFactor(String),
    #[error("coefficient vector has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("weight is not dominant")]
    NotDominant,
    #[error("weight has non-integral epsilon coordinates on factor {factor}")]
    NonIntegral { factor: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not antidiagonally symmetric")]
    NotAntidiagonalSymmetric,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("character part has rank above one")]
    CharacterRank,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parameters out of range: {0}")]
    Parameters(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("reduction step `{step}` has no solution")]
    Infeasible { step: String },
    #[error("no sample with nonzero value after {0} attempts")]
    SamplingExhausted(usize),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
