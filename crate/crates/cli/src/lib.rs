//! Text format, command surface and acceptance suites for `vasreach`.

pub mod commands;
pub mod format;
pub mod suites;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: format::ParseError,
    },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] vasreach::Error),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl CliError {
    /// 2 input, 3 precondition, 4 budget or inconclusive, 5 internal.
    pub fn exit_code(&self) -> i32 {
        use vasreach::Error as E;
        match self {
            CliError::Parse { .. } | CliError::Io(_) | CliError::Usage(_) => 2,
            CliError::Core(E::Precondition(_) | E::UnsupportedShape(_) | E::Model(_)) => 3,
            CliError::Core(E::Capacity { .. } | E::SearchLimit(_)) | CliError::Inconclusive(_) => 4,
            CliError::Core(E::Internal(_) | E::InfeasibleLift(_)) => 5,
        }
    }
}

impl From<vasreach::oracle::OracleError> for CliError {
    fn from(e: vasreach::oracle::OracleError) -> Self {
        CliError::Core(e.into())
    }
}
