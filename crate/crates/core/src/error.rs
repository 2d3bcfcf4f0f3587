use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("size guard: n = {n} exceeds the limit {max} for {what}")]
    SizeGuard { what: &'static str, n: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("numerical failure: {msg} (residual {residual:e})")]
    Numerical { msg: String, residual: f64 },

    #[error("solver stopped with status {status:?} (gap {gap:e})")]
    Solver { status: crate::solvers::SolveStatus, gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::SizeGuard { what, n, max })
    } else {
        Ok(())
    }
}
