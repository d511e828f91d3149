//! Command implementations behind the `folkegal` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod render;
pub mod report;

pub use commands::{cmd_oracle, cmd_simulate, cmd_solve, export, reproduce, solve_game};
pub use config::{Format, GameSource, LoadedGame, RunConfig, SolverKind, DEFAULT_EPS};
pub use error::{CliError, Result};
pub use render::Render;
pub use report::{OracleMethod, OracleReport, ReproduceReport, SimulateReport, SolveReport};

use std::path::Path;

/// Writes `text` to `out`, or stdout when absent.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}
