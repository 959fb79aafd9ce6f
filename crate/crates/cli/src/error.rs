use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] prgraph::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write to stdout: {0}")]
    Stdout(std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for internal failures, 2 for anything the caller can fix.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(prgraph::Error::Overflow(_)) => 1,
            CliError::Core(_) | CliError::Usage(_) | CliError::File { .. } => 2,
            CliError::Stdout(_) | CliError::Json(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
