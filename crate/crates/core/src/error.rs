use thiserror::Error;

/// Errors raised by the exact, series, density and positivity routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("series precondition violated: {0}")]
    SeriesPrecondition(String),

    #[error("x = {x} lies outside the open support (0, {upper})")]
    OutOfSupport { x: f64, upper: f64 },

    #[error("bracketing failed: {0}")]
    Bracketing(String),

    #[error(
        "quadrature did not converge: estimated error {est_error:e} exceeds tolerance {tol:e}"
    )]
    NonConvergence { est_error: f64, tol: f64 },

    #[error("insufficient data: need {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
