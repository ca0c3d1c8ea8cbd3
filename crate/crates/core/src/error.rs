use thiserror::Error;

/// Errors raised across the crate.
///
/// The variants map one-to-one onto the CLI exit codes (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("lattice validation failed: {0}")]
    Validation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("verification mismatch: {0}")]
    Mismatch(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    /// Process exit code: 1 mismatch, 2 input, 3 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Mismatch(_) | Error::Internal(_) => 1,
            Error::Resource(_) => 3,
            Error::Input(_) | Error::Validation(_) | Error::Parse { .. } | Error::Unsupported(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
