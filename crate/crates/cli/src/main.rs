use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use folkegal_cli::{
    cmd_oracle, cmd_simulate, cmd_solve, emit, export, reproduce, CliError, Format, GameSource,
    OracleMethod, Render, RunConfig, SolverKind, DEFAULT_EPS,
};
use folkegal_core::simulate::Deviator;
use folkegal_core::Player;

#[derive(Parser)]
#[command(name = "folkegal", version, about = "Egalitarian equilibria for repeated stochastic games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solver on one game.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "folkegal")]
        solver: SolverKind,
        /// CE-VI sweep limit.
        #[arg(long)]
        max_sweeps: Option<usize>,
    },
    /// Brute-force egalitarian point, compared against FolkEgal.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "enumerate")]
        method: OracleMethod,
    },
    /// Play the FolkEgal profile for many rounds.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100_000)]
        rounds: u64,
        #[arg(long, value_enum, default_value = "none")]
        deviator: DeviatorArg,
        /// Which player deviates.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        deviator_player: u8,
    },
    /// All builtin games under all solvers.
    Reproduce {
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        #[arg(long)]
        max_sweeps: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the compiled game as JSON.
    Export {
        #[arg(long)]
        game: Option<String>,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Builtin game name or game JSON file.
    #[arg(long)]
    game: Option<String>,
    /// Grid map file.
    #[arg(long)]
    map: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(self) -> Result<RunConfig, CliError> {
        let source = GameSource::from_args(self.game.as_deref(), self.map.as_deref())?;
        Ok(RunConfig {
            eps: self.eps,
            seed: self.seed,
            format: self.format,
            out: self.out,
            ..RunConfig::new(source)
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DeviatorArg {
    None,
    BestResponseOnce,
    Random,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (text, out) = match cli.command {
        Command::Solve { common, solver, max_sweeps } => {
            let cfg = RunConfig { solver, max_sweeps, ..common.config()? };
            (cmd_solve(&cfg)?.render(cfg.format)?, cfg.out)
        }
        Command::Oracle { common, method } => {
            let cfg = common.config()?;
            (cmd_oracle(&cfg, method)?.render(cfg.format)?, cfg.out)
        }
        Command::Simulate { common, rounds, deviator, deviator_player } => {
            let cfg = common.config()?;
            let p = if deviator_player == 1 { Player::One } else { Player::Two };
            let dev = match deviator {
                DeviatorArg::None => Deviator::None,
                DeviatorArg::BestResponseOnce => Deviator::BestResponseOnce(p),
                DeviatorArg::Random => Deviator::Random(p),
            };
            (cmd_simulate(&cfg, rounds, dev)?.render(cfg.format)?, cfg.out)
        }
        Command::Reproduce { eps, max_sweeps, format, out } => {
            let cfg = RunConfig {
                eps,
                max_sweeps,
                format,
                ..RunConfig::new(GameSource::Builtin(String::new()))
            };
            (reproduce(&cfg)?.render(format)?, out)
        }
        Command::Export { game, map, out } => {
            let source = GameSource::from_args(game.as_deref(), map.as_deref())?;
            (export(&source)? + "\n", out)
        }
    };
    emit(&text, out.as_deref())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
