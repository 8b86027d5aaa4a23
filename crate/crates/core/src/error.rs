use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("grid too small: need at least {needed} points, got {got}")]
    GridTooSmall { needed: usize, got: usize },

    #[error("grid must be uniform (max spacing deviation {deviation:e})")]
    NonUniformGrid { deviation: f64 },

    #[error("state n = {n} is not bound: the well holds {count} bound state(s) (need n < (s - m - 1)/2 = {limit})")]
    UnboundState { n: usize, count: usize, limit: f64 },

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {estimate:e}, error {error:e})")]
    NonConvergence {
        subdivisions: usize,
        estimate: f64,
        error: f64,
    },

    #[error("argument {arg} = {value} exceeds the overflow guard {limit}")]
    Overflow {
        arg: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("curve has no point with Q < 1e-6 to normalize against")]
    MissingOrigin,

    #[error("eigenvalue residual {residual:e} exceeds tolerance {tolerance:e}")]
    Convergence { residual: f64, tolerance: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(op: &'static str, reason: impl Into<String>) -> Result<T> {
    Err(Error::Domain {
        op,
        reason: reason.into(),
    })
}
