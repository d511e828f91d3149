use folkegal_core::folkegal::check_enforceable;
use folkegal_core::oracle::{enumerate_egalitarian, occupancy_egalitarian, DEFAULT_POLICY_CAP};
use folkegal_core::simulate::{simulate, Deviator};
use folkegal_core::solvers::{ce_vi, default_ce_sweeps, friend_vi, security_profile, shapley_solve};
use folkegal_core::{egal_value, folk_egal, PayoffPoint, Player, StochasticGame};
use folkegal_grid::BUILTIN_NAMES;

use crate::config::{GameSource, RunConfig, SolverKind};
use crate::error::Result;
use crate::report::*;

fn disagreement(game: &StochasticGame, eps: f64) -> Result<PayoffPoint> {
    let v1 = shapley_solve(game, Player::One, eps / 2.0)?.value;
    let v2 = shapley_solve(game, Player::Two, eps / 2.0)?.value;
    Ok(PayoffPoint::new(v1, v2))
}

pub fn solve_game(name: &str, game: &StochasticGame, cfg: &RunConfig) -> Result<SolveReport> {
    let eps = cfg.eps;
    let mut report = SolveReport {
        format: REPORT_FORMAT.into(),
        game: name.to_string(),
        solver: cfg.solver,
        eps,
        payoff: PayoffPoint::default(),
        disagreement: PayoffPoint::default(),
        advantage: PayoffPoint::default().advantage(PayoffPoint::default()),
        egal_value: 0.0,
        converged: true,
        sweeps: None,
        mode: None,
        lambda: None,
        enforceability: None,
        trace: None,
    };
    match cfg.solver {
        SolverKind::Folkegal => {
            let out = folk_egal(game, eps)?;
            report.payoff = out.profile.payoff();
            report.disagreement = out.profile.disagreement;
            report.mode = Some(out.profile.mode());
            report.lambda = out.profile.lambda();
            report.enforceability = Some(check_enforceable(game, &out.profile, eps)?);
            report.trace = Some(TraceSummary::from(&out.trace));
        }
        SolverKind::Security => {
            let sol = security_profile(game, eps / 2.0)?;
            report.payoff = sol.payoff;
            report.disagreement = sol.disagreement;
            report.sweeps = Some(sol.zero_sum1.sweeps.max(sol.zero_sum2.sweeps));
        }
        SolverKind::Friend => {
            report.payoff = friend_vi(game, eps)?.payoff;
            report.disagreement = disagreement(game, eps)?;
        }
        SolverKind::Ce => {
            let max = match cfg.max_sweeps {
                Some(m) => m,
                None => default_ce_sweeps(game, eps)?,
            };
            let sol = ce_vi(game, eps, max)?;
            if !sol.converged {
                log::warn!("{name}: CE-VI did not converge in {} sweeps", sol.sweeps);
            }
            report.payoff = sol.payoff;
            report.converged = sol.converged;
            report.sweeps = Some(sol.sweeps);
            report.disagreement = disagreement(game, eps)?;
        }
    }
    report.advantage = report.payoff.advantage(report.disagreement);
    report.egal_value = egal_value(report.payoff, report.disagreement);
    Ok(report)
}

pub fn cmd_solve(cfg: &RunConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let loaded = cfg.source.load()?;
    solve_game(&loaded.name, &loaded.game, cfg)
}

pub fn cmd_oracle(cfg: &RunConfig, method: OracleMethod) -> Result<OracleReport> {
    cfg.validate()?;
    let loaded = cfg.source.load()?;
    let game = &loaded.game;
    let out = folk_egal(game, cfg.eps)?;
    let v = out.profile.disagreement;
    let (point, enumerated, vertices) = match method {
        OracleMethod::Enumerate => {
            let res = enumerate_egalitarian(game, v, DEFAULT_POLICY_CAP, 1e-9)?;
            (res.point, Some(res.hull.policies_enumerated), Some(res.hull.vertices))
        }
        OracleMethod::Occupancy => (occupancy_egalitarian(game, v)?, None, None),
    };
    let oracle_egal = egal_value(point, v);
    let folk_egal_value = egal_value(out.profile.payoff(), v);
    Ok(OracleReport {
        format: REPORT_FORMAT.into(),
        game: loaded.name,
        method,
        eps: cfg.eps,
        disagreement: v,
        point,
        egal_value: oracle_egal,
        policies_enumerated: enumerated,
        vertices,
        folkegal_payoff: out.profile.payoff(),
        folkegal_egal_value: folk_egal_value,
        agrees: (folk_egal_value - oracle_egal).abs() <= cfg.eps,
    })
}

pub fn cmd_simulate(cfg: &RunConfig, rounds: u64, deviator: Deviator) -> Result<SimulateReport> {
    cfg.validate()?;
    if rounds == 0 {
        return Err(crate::CliError::Usage("--rounds must be at least 1".into()));
    }
    let loaded = cfg.source.load()?;
    let out = folk_egal(&loaded.game, cfg.eps)?;
    let simulation = simulate(&loaded.game, &out.profile, rounds, deviator, cfg.seed)?;
    Ok(SimulateReport {
        format: REPORT_FORMAT.into(),
        game: loaded.name,
        eps: cfg.eps,
        mode: out.profile.mode(),
        lambda: out.profile.lambda(),
        simulation,
    })
}

/// Every builtin under every solver.
pub fn reproduce(cfg: &RunConfig) -> Result<ReproduceReport> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for name in BUILTIN_NAMES {
        let loaded = GameSource::Builtin(name.to_string()).load()?;
        for solver in SolverKind::ALL {
            let run = RunConfig { solver, ..cfg.clone() };
            let r = solve_game(&loaded.name, &loaded.game, &run)?;
            log::info!("{name} {}: {}", solver.name(), r.payoff);
            rows.push(ReproduceRow { game: r.game, solver, payoff: r.payoff, converged: r.converged });
        }
    }
    Ok(ReproduceReport { format: REPORT_FORMAT.into(), eps: cfg.eps, rows })
}

/// The compiled game as a JSON document.
pub fn export(source: &GameSource) -> Result<String> {
    Ok(source.load()?.game.to_json())
}
