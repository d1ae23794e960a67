use thiserror::Error;

/// Error taxonomy shared by every module.
///
/// The CLI maps `Input`, `Parse`, `Precondition` and `UnsupportedFiber` to
/// exit code 1 and `ComputationLimit` to exit code 2.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported fiber: {0}")]
    UnsupportedFiber(String),

    #[error("computation limit exceeded: {what} ({stats})")]
    ComputationLimit { what: String, stats: String },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn limit(what: impl Into<String>, stats: impl Into<String>) -> Self {
        Error::ComputationLimit {
            what: what.into(),
            stats: stats.into(),
        }
    }

    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ComputationLimit { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
