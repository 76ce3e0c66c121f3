use thiserror::Error;

/// Errors surfaced by the library and the command-line tool.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{format} parse error at byte {offset}: {message}")]
    Parse {
        format: &'static str,
        offset: usize,
        message: String,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("node {node} out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("index store {path}: line {line}: {message}")]
    Store {
        path: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(format: &'static str, offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            format,
            offset,
            message: message.into(),
        }
    }
}
