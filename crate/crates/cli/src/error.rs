use std::fmt;

use seip_core::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// Verification failure or an unexpected runtime error.
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    /// Evaluation budget exhausted without a feasible solution.
    pub const NO_FEASIBLE: i32 = 3;
    pub const ORACLE_REFUSED: i32 = 4;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            message: message.into(),
        }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        Self {
            code: exit::FAILURE,
            message: message.into(),
        }
    }

    pub fn context(self, what: impl fmt::Display) -> Self {
        Self {
            code: self.code,
            message: format!("{what}: {}", self.message),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::OracleRefused { .. } => exit::ORACLE_REFUSED,
            Error::Parse(_)
            | Error::Json(_)
            | Error::Io(_)
            | Error::InvalidInstance(_)
            | Error::LengthMismatch { .. } => exit::USAGE,
            _ => exit::FAILURE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Error::from(e).into()
    }
}

pub type CliResult<T> = Result<T, CliError>;
