use std::fmt::Display;

use snforge_core::Error;

/// Everything a command can fail with; each variant has a fixed exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or inconsistent input, with the JSON path of the offending value.
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("recheck failed: {0}")]
    Recheck(String),
}

impl CliError {
    pub fn input(path: &str, message: impl Display) -> Self {
        let path = if path.is_empty() { "$".to_string() } else { path.to_string() };
        CliError::Input { path, message: message.to_string() }
    }

    /// Core errors raised while processing the value at `path`.
    pub fn core(path: &str, e: Error) -> Self {
        match e {
            Error::Unsupported(why) => CliError::Unsupported(why),
            e => CliError::input(path, e),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } | CliError::Io(_) => 1,
            CliError::Unsupported(_) => 3,
            CliError::Recheck(_) => 4,
        }
    }
}
