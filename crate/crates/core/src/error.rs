use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    MixedRings,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("matrix entry ({row},{col}) has degree {found}, expected {expected}")]
    EntryDegree {
        row: usize,
        col: usize,
        expected: i32,
        found: i32,
    },
    #[error("invalid ring map: {0}")]
    InvalidMap(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("operation requires characteristic 2")]
    NotCharacteristicTwo,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Diagnostic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
