use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("diagram is not spherical: {0}")]
    NotSpherical(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A bounded search gave up. Results are never silently truncated.
    #[error("budget exceeded in {what} after {explored} steps")]
    Budget { what: String, explored: u64 },

    #[error("{0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn budget(what: impl Into<String>, explored: u64) -> Self {
        Error::Budget {
            what: what.into(),
            explored,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
