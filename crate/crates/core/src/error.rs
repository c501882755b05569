use thiserror::Error;

/// Error kinds, aligned with the CLI exit codes (1 verification, 2 cap,
/// 3 parse, 4 domain).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size cap exceeded: {0}")]
    Cap(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) => 1,
            Error::Cap(_) => 2,
            Error::Parse(_) => 3,
            Error::Domain(_) => 4,
        }
    }
}

pub fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn domain_err(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
