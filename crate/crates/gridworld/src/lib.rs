//! Two-player grid games: an ASCII map format, the movement and collision
//! rules, and the five benchmark maps.

mod builtin;
mod compile;
mod error;
mod parse;
mod spec;

pub use builtin::{builtin_game, builtin_source, BUILTIN_NAMES};
pub use compile::{compile_grid, ACTIONS, STAND, TERMINAL_NAME};
pub use error::{GridError, Result};
pub use parse::{parse_grid, render, FORMAT_VERSION};
pub use spec::{Goal, GridSpec, Owner, Pos, DEFAULT_GAMMA, DEFAULT_GOAL_REWARD, DEFAULT_STEP_COST, MAX_CELLS};
