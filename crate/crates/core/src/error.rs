use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("{algebra}: bracket [{left}, {right}] leaves the declared span")]
    Closure {
        algebra: String,
        left: String,
        right: String,
    },

    #[error("{algebra}: {reason}")]
    Construction { algebra: String, reason: String },

    #[error("parse error at {location}: {reason}")]
    Parse { location: String, reason: String },

    #[error("fixture {fixture}: {reason}")]
    Fixture { fixture: String, reason: String },

    #[error("solver inconclusive: {0}")]
    Inconclusive(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            reason: reason.into(),
        }
    }
}
