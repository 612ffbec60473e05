use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid singularity ({a},{b}): need 2 <= a <= b")]
    InvalidSingularity { a: u32, b: u32 },

    #[error("T({a},{b}) has {branches} branches; link genus is defined for knots only")]
    NotAKnot { a: u32, b: u32, branches: u32 },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("lattice dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("cannot lift class: {0}")]
    InvalidLift(String),

    #[error("{0} is not a supported prime (must be prime and <= {max})", max = crate::realize_ff::MAX_PRIME)]
    InvalidPrime(u32),

    #[error("arrangement of {lines} lines does not fit in PG(2,{p}) with {available} lines")]
    PlaneTooSmall { lines: usize, p: u32, available: usize },

    #[error("not a rational cuspidal configuration: {0}")]
    NotRationalCuspidal(String),

    #[error("projection from the pivot has degree {0}; need at least 1")]
    DegenerateProjection(i64),

    #[error("inconsistent component Euler characteristics: sum {given}, adjunction forces {expected}")]
    InconsistentChi { given: i64, expected: i64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
