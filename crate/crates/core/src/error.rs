use thiserror::Error;

/// Errors raised while building graphs, walk operators and spectra.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("vertex {0} has degree zero")]
    DegreeZero(usize),
    #[error("eigenvalue iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("inconsistent discriminant spectrum: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
