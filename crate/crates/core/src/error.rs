use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed graph input; `offset` is a byte offset for graph6 and a
    /// 1-based line number for edge lists.
    #[error("parse error at {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An argument falls outside the region where the requested quantity
    /// is defined (pole proximity, forbidden shift band, zero matrix, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical failure: {message} (residual {residual:e})")]
    Numerical { message: String, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
