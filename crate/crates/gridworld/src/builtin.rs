use crate::error::{GridError, Result};
use crate::parse::parse_grid;
use crate::spec::GridSpec;

pub const BUILTIN_NAMES: [&str; 5] =
    ["coordination", "chicken", "prisoners_dilemma", "compromise", "asymmetric"];

/// Map source text of a builtin game.
pub fn builtin_source(name: &str) -> Result<&'static str> {
    Ok(match name {
        "coordination" => include_str!("../maps/coordination.map"),
        "chicken" => include_str!("../maps/chicken.map"),
        "prisoners_dilemma" => include_str!("../maps/prisoners_dilemma.map"),
        "compromise" => include_str!("../maps/compromise.map"),
        "asymmetric" => include_str!("../maps/asymmetric.map"),
        other => return Err(GridError::UnknownGame(other.to_string())),
    })
}

pub fn builtin_game(name: &str) -> Result<GridSpec> {
    parse_grid(builtin_source(name)?)
}
