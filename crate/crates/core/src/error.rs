use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number literal `{0}`")]
    InvalidNumber(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },
    #[error("{0}: zero polynomial not allowed")]
    ZeroPolynomial(&'static str),
    #[error("{0}: constant polynomial not allowed")]
    ConstantPolynomial(&'static str),
    #[error("{0}: expected a univariate polynomial")]
    NotUnivariate(&'static str),
    #[error("g must be irreducible")]
    Reducible,
    #[error("polynomial map must be square (r = n), got r = {r}, n = {n}")]
    NotSquare { r: usize, n: usize },
    #[error("polynomial map must satisfy 1 <= r <= n, got r = {r}, n = {n}")]
    BadMapArity { r: usize, n: usize },
    #[error("polynomials are algebraically dependent (all {minors} maximal minors vanish)")]
    Dependent { minors: usize },
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
