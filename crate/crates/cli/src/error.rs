use std::io;
use std::path::Path;

use photon_kick_core::RunError;
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_CONVERGED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
    #[error("simulation failed: {0}")]
    Run(#[from] RunError),
    #[error("malformed CSV at line {line}: {reason}")]
    Format { line: usize, reason: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    pub fn io_at(path: &Path, source: io::Error) -> Self {
        Self::io(path.display().to_string(), source)
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            // clap reports 0 for --help/--version and 2 for bad input.
            CliError::Clap(e) => u8::try_from(e.exit_code()).unwrap_or(EXIT_USAGE),
            CliError::Io { .. } | CliError::Format { .. } => EXIT_IO,
            CliError::Run(_) => EXIT_NOT_CONVERGED,
        }
    }
}
