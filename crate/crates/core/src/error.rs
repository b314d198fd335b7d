use std::path::PathBuf;

/// Errors produced by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {message}")]
    Range { message: String, achieved: Option<usize> },

    #[error("numeric error: {message} ({diagnostics})")]
    Numeric { message: String, diagnostics: String },

    #[error("precondition violated: {message} (measured {measured:e})")]
    Precondition { message: String, measured: f64 },

    #[error("resource error: {0}")]
    Resource(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range {
            message: msg.into(),
            achieved: None,
        }
    }
}
