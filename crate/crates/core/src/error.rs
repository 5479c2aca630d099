use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped by how a caller is expected to react: malformed
/// input is a data problem, a failed precondition means the computation is
/// not defined for the given arguments.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unknown stratum id {0}")]
    UnknownStratum(usize),

    #[error("simplex {0} is not in the complex")]
    UnknownSimplex(String),

    #[error("complexes share vertex ids: {0:?}")]
    SharedVertices(Vec<usize>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("undefined extended-integer operation: {0}")]
    Undefined(&'static str),

    #[error("io error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
