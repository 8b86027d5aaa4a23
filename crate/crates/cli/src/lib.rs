//! Command-line front end for `curvedspec`: figure datasets, queries and
//! the conformance suite.

pub mod app;
pub mod check;
pub mod config;
pub mod dataset;
pub mod figures;
pub mod query;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Arg(String),
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 ok, 1 argument, 2 non-convergence, 3 invariant failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Arg(_) | CliError::Io(_) => 1,
            CliError::NonConvergence(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl From<curvedspec::Error> for CliError {
    fn from(e: curvedspec::Error) -> Self {
        use curvedspec::Error as E;
        match e {
            E::NonConvergence { .. } | E::Convergence { .. } => CliError::NonConvergence(e.to_string()),
            other => CliError::Arg(other.to_string()),
        }
    }
}
