use std::io;
use std::path::PathBuf;

/// Errors from generation, experiments, and file IO.
#[derive(Debug, thiserror::Error)]
pub enum PldgError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no valid instance after {attempts} attempts (last rejection: {reason})")]
    GenerationExhausted { attempts: usize, reason: String },
    #[error("geometry: {0}")]
    Core(#[from] pldg_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, PldgError>;

pub(crate) fn io_at(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> PldgError {
    let path = path.into();
    move |source| PldgError::Io { path, source }
}
