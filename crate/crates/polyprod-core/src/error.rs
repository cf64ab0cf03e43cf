use thiserror::Error;

/// Failure classes; the CLI maps them to exit codes 2, 3 and 4.
#[derive(Clone, Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
