use std::path::PathBuf;

use posetcausal::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("signal file: {0}")]
    Csv(#[from] csv::Error),

    #[error("signal file: {0}")]
    Signal(String),

    #[error("unknown demo {0:?}; try `pcs demo --list`")]
    UnknownDemo(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 for validation or analysis failures, 2 for I/O and parse errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                CoreError::Format(_)
                | CoreError::ParseRational(_)
                | CoreError::IndexOutOfRange { .. }
                | CoreError::Cycle { .. }
                | CoreError::ShapeMismatch(_)
                | CoreError::PartitionMismatch { .. }
                | CoreError::InvalidSignal(_) => 2,
                _ => 1,
            },
            CliError::Io { .. } | CliError::Csv(_) | CliError::Signal(_) => 2,
            CliError::UnknownDemo(_) | CliError::Usage(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
