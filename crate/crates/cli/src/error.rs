use thiserror::Error;
use umbral_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input; exit code 2.
    #[error("{0}")]
    Validation(String),
    /// Anything else; exit code 1.
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        CliError::Internal(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InternalConsistency(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(format!("i/o error: {e}"))
    }
}
