use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Scenario(String),
    #[error("fixture: {0}")]
    Fixture(String),
    #[error("claims file: {0}")]
    Claims(String),
    #[error(transparent)]
    Core(#[from] tango_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
