use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("symbol is singular at z = {z}")]
    Domain { z: Complex64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("expansion infeasible: best alpha = {alpha}, delta = {delta} (need delta < 1)")]
    ExpansionInfeasible { alpha: f64, delta: f64 },

    #[error("tolerance {tol:e} unreachable within {max_order} terms; achievable tail bound {achievable:e}")]
    ToleranceUnreachable {
        tol: f64,
        max_order: usize,
        achievable: f64,
    },

    #[error("no convergence after {iterations} iterations (last estimate {last_estimate})")]
    Convergence {
        iterations: usize,
        last_estimate: f64,
    },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("dense matrix of order {order} exceeds the memory cap of {cap} entries")]
    Resource { order: usize, cap: usize },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 2 invalid config, 3 hypothesis
    /// violation, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) | Error::Config(_) => 2,
            Error::Domain { .. } | Error::Hypothesis(_) | Error::ExpansionInfeasible { .. } => 3,
            Error::ToleranceUnreachable { .. }
            | Error::Convergence { .. }
            | Error::Eigensolver(_)
            | Error::Resource { .. } => 4,
            Error::Io { .. } => 1,
        }
    }
}
