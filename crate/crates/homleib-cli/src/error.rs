//! Exit-code classification of everything that can stop a command.

use std::fmt;
use std::process::ExitCode;

use homleib::construct::ConstructError;
use homleib::corpus::CorpusError;
use homleib::identities::CheckError;

/// Why a command stopped early.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input or an invalid combination of arguments (exit 2).
    Usage(String),
    /// A check or a construction hypothesis failed (exit 1).
    Failed(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Failed(_) => ExitCode::from(1),
            CliError::Usage(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Precondition { .. } | ConstructError::Verification { .. } | ConstructError::Linalg(_) => {
                CliError::Failed(e.to_string())
            }
            ConstructError::Unsupported(_) | ConstructError::Check(_) => CliError::Usage(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
