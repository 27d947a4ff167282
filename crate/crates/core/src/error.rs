use thiserror::Error;

/// Failures raised by the geometric and alignment routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is not supported, points must live in R^d with d >= 2")]
    DimensionTooSmall(usize),
    #[error("coordinate {value} is not finite")]
    NonFinite { value: f64 },
    #[error("all three vertices coincide")]
    TrivialTriple,
    #[error("triple is not equilateral (residual {residual:e})")]
    NotEquilateral { residual: f64 },
    #[error("linear system is singular")]
    SingularSystem,
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
