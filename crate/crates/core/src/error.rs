use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("size mismatch: |{left}| = {left_size} but |{right}| = {right_size}")]
    SizeMismatch {
        left: String,
        left_size: usize,
        right: String,
        right_size: usize,
    },

    #[error("cannot remove a box from row {row} of ({partition})")]
    UndefinedBoxRemoval { partition: String, row: usize },

    #[error("cache file {path}: line {line}: {reason}")]
    Cache {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
