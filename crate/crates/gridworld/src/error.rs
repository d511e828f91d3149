use folkegal_core::GameError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    /// Positions are 1-based.
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid grid: {0}")]
    Invalid(String),

    #[error("unknown builtin game {0:?}")]
    UnknownGame(String),

    #[error(transparent)]
    Game(#[from] GameError),
}

pub type Result<T> = std::result::Result<T, GridError>;
