use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polynomial degree {0}")]
    InvalidDegree(usize),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("non-finite state: {0}")]
    NonFinite(String),

    /// A state failed one of the admissibility constraints `p_k(u) > 0`.
    #[error("inadmissible state in {context}: constraint {constraint} = {value:e}")]
    Inadmissible {
        context: String,
        constraint: usize,
        value: f64,
    },

    /// An internal consistency check of the scheme failed.
    #[error("invariant breach: {0}")]
    InvariantBreach(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown case `{name}`; available: {available}")]
    UnknownCase { name: String, available: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
