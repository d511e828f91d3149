use std::path::PathBuf;

use folkegal_core::GameError;
use folkegal_grid::GridError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Grid { path: PathBuf, source: GridError },

    #[error("{path}: {source}")]
    GameFile { path: PathBuf, source: GameError },

    #[error(transparent)]
    Builtin(GridError),

    #[error("solver failed: {0}")]
    Solver(#[from] GameError),

    #[error("cannot serialize report: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 1 for failures after the game loaded.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(GameError::CapExceeded { .. }) => 2,
            CliError::Solver(_) | CliError::Serialize(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
