use infolattice::SubsystemIndex;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("malformed input {path}: {source}")]
    Input {
        path: PathBuf,
        source: infolattice::Error,
    },
    #[error("{context}: {source}")]
    Compute {
        context: String,
        source: infolattice::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("oracle mismatch: max |delta| = {max_delta:e} at {index} exceeds {tolerance:e}")]
    OracleMismatch {
        max_delta: f64,
        index: SubsystemIndex,
        tolerance: f64,
    },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn compute(context: impl Into<String>) -> impl FnOnce(infolattice::Error) -> Self {
        let context = context.into();
        move |source| CliError::Compute { context, source }
    }

    /// 0 success, 1 compute error, 2 configuration or input error, 3 oracle
    /// mismatch.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute { .. } | CliError::Io { .. } => 1,
            CliError::Config(_) | CliError::Input { .. } => 2,
            CliError::OracleMismatch { .. } => 3,
        }
    }
}
