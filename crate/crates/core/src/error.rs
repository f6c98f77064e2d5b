use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("arity {requested} exceeds the configured cap of {cap}")]
    DegreeCap { requested: usize, cap: usize },

    #[error("operator is not invertible: {0}")]
    NotInvertible(String),

    #[error("bracket left the cochain subspace at {0}")]
    Closure(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("search space of {candidates} candidates exceeds the ceiling of {ceiling}")]
    SearchBound { candidates: u128, ceiling: u128 },

    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn at(self, prefix: &str) -> Self {
        match self {
            Error::Parse { path, message } => Error::Parse {
                path: if path.is_empty() {
                    prefix.to_string()
                } else {
                    format!("{prefix}{path}")
                },
                message,
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
