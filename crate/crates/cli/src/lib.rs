//! Parsing, validation and report formatting for the `uncert` binary.

pub mod instance;
pub mod output;

use std::fmt;

/// CLI-level errors carrying the process exit code: 2 for input problems,
/// 3 for internal inconsistencies.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(String),
    Internal(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::Validation(msg) => write!(f, "validation error: {msg}"),
            CliError::Internal(msg) => write!(f, "internal inconsistency: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<uncert_core::Error> for CliError {
    fn from(err: uncert_core::Error) -> Self {
        if err.is_internal() {
            CliError::Internal(err.to_string())
        } else {
            CliError::Validation(err.to_string())
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Parse(format!(
            "{} (line {}, column {})",
            err,
            err.line(),
            err.column()
        ))
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_split_validation_from_internal() {
        assert_eq!(CliError::Parse("x".into()).exit_code(), 2);
        assert_eq!(CliError::Validation("x".into()).exit_code(), 2);
        assert_eq!(CliError::Io("x".into()).exit_code(), 2);
        assert_eq!(CliError::Internal("x".into()).exit_code(), 3);

        let validation: CliError = uncert_core::Error::EmptyObservables.into();
        assert_eq!(validation.exit_code(), 2);
        let internal: CliError = uncert_core::Error::RatioExceedsOne { ratio: 2.0 }.into();
        assert_eq!(internal.exit_code(), 3);
    }
}
