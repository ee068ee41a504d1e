use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, FcError>;

#[derive(Debug, Clone, Error)]
pub enum FcError {
    #[error("degenerate exponent mu = {0}: must differ from 0 and 1")]
    DegenerateExponent(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid equation: {0}")]
    InvalidEquation(String),
    #[error("invalid pivot ({p},{q}): {reason}")]
    InvalidPivot { p: usize, q: usize, reason: String },
    #[error("branch index {branch} out of range for {count} branches")]
    BranchOutOfRange { branch: usize, count: usize },
    #[error("no convergent cover: {found} of {degree} roots found")]
    NoConvergentCover {
        found: usize,
        degree: usize,
        roots: Vec<Complex64>,
    },
    #[error("root oracle failed: {0}")]
    OracleFailure(String),
    #[error("degree {0} outside the supported range 2..=6")]
    DegreeOutOfRange(usize),
    #[error("origin classification indeterminate: {0}")]
    Indeterminate(String),
    #[error("every member of the family has a saddle at the origin")]
    NoActiveBoundary,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}
