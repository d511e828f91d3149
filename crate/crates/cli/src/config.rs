use std::path::{Path, PathBuf};

use clap::ValueEnum;
use folkegal_core::StochasticGame;
use folkegal_grid::{builtin_game, compile_grid, parse_grid, BUILTIN_NAMES};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameSource {
    Builtin(String),
    Map(PathBuf),
    Json(PathBuf),
}

impl GameSource {
    /// `--game` takes a builtin name or a game JSON file; `--map` a grid map.
    pub fn from_args(game: Option<&str>, map: Option<&Path>) -> Result<Self> {
        match (game, map) {
            (Some(_), Some(_)) => Err(CliError::Usage("give either --game or --map, not both".into())),
            (None, None) => Err(CliError::Usage("one of --game or --map is required".into())),
            (None, Some(m)) => Ok(GameSource::Map(m.to_path_buf())),
            (Some(g), None) if BUILTIN_NAMES.contains(&g) => Ok(GameSource::Builtin(g.to_string())),
            (Some(g), None) if Path::new(g).is_file() => Ok(GameSource::Json(PathBuf::from(g))),
            (Some(g), None) => Err(CliError::Usage(format!(
                "{g:?} is neither a builtin game ({}) nor a readable file",
                BUILTIN_NAMES.join(", ")
            ))),
        }
    }

    pub fn load(&self) -> Result<LoadedGame> {
        let read = |path: &Path| {
            std::fs::read_to_string(path)
                .map_err(|source| CliError::Io { path: path.to_path_buf(), source })
        };
        let stem = |path: &Path| {
            path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
        };
        match self {
            GameSource::Builtin(name) => {
                let spec = builtin_game(name).map_err(CliError::Builtin)?;
                let game = compile_grid(&spec).map_err(CliError::Builtin)?;
                Ok(LoadedGame { name: name.clone(), game })
            }
            GameSource::Map(path) => {
                let grid_err = |source| CliError::Grid { path: path.clone(), source };
                let spec = parse_grid(&read(path)?).map_err(grid_err)?;
                let game = compile_grid(&spec).map_err(grid_err)?;
                let name = spec.name.clone().unwrap_or_else(|| stem(path));
                Ok(LoadedGame { name, game })
            }
            GameSource::Json(path) => {
                let game = StochasticGame::from_json(&read(path)?)
                    .map_err(|source| CliError::GameFile { path: path.clone(), source })?;
                Ok(LoadedGame { name: stem(path), game })
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct LoadedGame {
    pub name: String,
    pub game: StochasticGame,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Folkegal,
    Security,
    Friend,
    Ce,
}

impl SolverKind {
    pub const ALL: [SolverKind; 4] =
        [SolverKind::Security, SolverKind::Friend, SolverKind::Ce, SolverKind::Folkegal];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Folkegal => "folkegal",
            SolverKind::Security => "security",
            SolverKind::Friend => "friend",
            SolverKind::Ce => "ce",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

pub const DEFAULT_EPS: f64 = 0.1;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: GameSource,
    pub solver: SolverKind,
    pub eps: f64,
    /// CE-VI sweep limit; `None` uses the default derived from Shapley VI.
    pub max_sweeps: Option<usize>,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(source: GameSource) -> Self {
        Self {
            source,
            solver: SolverKind::Folkegal,
            eps: DEFAULT_EPS,
            max_sweeps: None,
            seed: 0,
            format: Format::Table,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(CliError::Usage(format!("--eps must be positive, got {}", self.eps)));
        }
        if self.max_sweeps == Some(0) {
            return Err(CliError::Usage("--max-sweeps must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_resolution() {
        assert_eq!(
            GameSource::from_args(Some("chicken"), None).unwrap(),
            GameSource::Builtin("chicken".into())
        );
        assert_eq!(
            GameSource::from_args(None, Some(Path::new("a.map"))).unwrap(),
            GameSource::Map("a.map".into())
        );
        assert!(GameSource::from_args(None, None).is_err());
        assert!(GameSource::from_args(Some("chicken"), Some(Path::new("a.map"))).is_err());
        let err = GameSource::from_args(Some("nope"), None).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn config_validation() {
        let cfg = RunConfig::new(GameSource::Builtin("chicken".into()));
        assert_eq!(cfg.seed, 0);
        assert!(cfg.validate().is_ok());
        for eps in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(RunConfig { eps, ..cfg.clone() }.validate().is_err());
        }
        assert!(RunConfig { max_sweeps: Some(0), ..cfg }.validate().is_err());
    }

    #[test]
    fn builtins_load() {
        for name in BUILTIN_NAMES {
            let g = GameSource::Builtin(name.into()).load().unwrap();
            assert_eq!(g.name, name);
            assert!(g.game.num_states() > 1);
        }
    }
}
