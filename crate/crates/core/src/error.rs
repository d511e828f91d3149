use thiserror::Error;

/// Errors raised by game construction, evaluation and the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("incomplete policy: no entry for reachable state {state}")]
    IncompletePolicy { state: usize },

    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("points on same side of the egalitarian line")]
    SameSide,

    #[error("linear program failed: {0}")]
    Solver(String),

    #[error("enumeration cap exceeded: {count} joint policies (cap {cap}); use the property tests or the occupancy LP instead")]
    CapExceeded { count: f64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, GameError>;
