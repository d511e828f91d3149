//! Egalitarian equilibrium search: security values as the disagreement
//! point, joint-control solutions as hull vertices, a binary search along
//! the egalitarian line, and grim-trigger threats to enforce the result.

mod enforce;
mod geometry;
mod search;

pub use enforce::{check_enforceable, EnforceabilityReport, PlayerMargin};
pub use geometry::{balance, default_nu0, intersect, iteration_bound};
pub use search::{egal_search, SearchResult, SearchTrace, TraceIteration};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::eval::evaluate_mixed_pair;
use crate::game::{Player, StochasticGame};
use crate::geometry::{egal_value, line_side, mix_points, PayoffPoint, Side, DEFAULT_TOL};
use crate::policy::{JointPolicy, MixedPolicy};
use crate::solvers::{shapley_solve, solve_mdp_w, ZeroSumSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileMode {
    Defensive,
    Alternating,
}

/// How the profile is played.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProfilePlay {
    /// Both players use their maximin strategies.
    Defensive { d1: MixedPolicy, d2: MixedPolicy, payoff: PayoffPoint },
    /// Rounds alternate between two joint policies so that a fraction
    /// `lambda` of them use `left_policy`. A deviation by player `i` is
    /// answered forever by `punish_p{i}`, the opponent's attack strategy.
    Alternating {
        lambda: f64,
        left_policy: JointPolicy,
        right_policy: JointPolicy,
        left_payoff: PayoffPoint,
        right_payoff: PayoffPoint,
        punish_p1: MixedPolicy,
        punish_p2: MixedPolicy,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquilibriumProfile {
    pub play: ProfilePlay,
    /// Security values `(v1, v2)`.
    pub disagreement: PayoffPoint,
    /// Point found on (or nearest) the egalitarian line.
    pub target: PayoffPoint,
    pub egal_value: f64,
    pub eps: f64,
}

impl EquilibriumProfile {
    pub fn mode(&self) -> ProfileMode {
        match self.play {
            ProfilePlay::Defensive { .. } => ProfileMode::Defensive,
            ProfilePlay::Alternating { .. } => ProfileMode::Alternating,
        }
    }

    /// Expected per-round payoff when the profile is followed.
    pub fn payoff(&self) -> PayoffPoint {
        match &self.play {
            ProfilePlay::Defensive { payoff, .. } => *payoff,
            ProfilePlay::Alternating { .. } => self.target,
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match &self.play {
            ProfilePlay::Alternating { lambda, .. } => Some(*lambda),
            ProfilePlay::Defensive { .. } => None,
        }
    }

    /// The opponent strategy that punishes `deviator`.
    pub fn threat_against(&self, deviator: Player) -> Option<&MixedPolicy> {
        match &self.play {
            ProfilePlay::Alternating { punish_p1, punish_p2, .. } => Some(match deviator {
                Player::One => punish_p1,
                Player::Two => punish_p2,
            }),
            ProfilePlay::Defensive { .. } => None,
        }
    }
}

/// Everything [`folk_egal`] computed along the way.
#[derive(Debug, Clone)]
pub struct FolkEgalOutput {
    pub profile: EquilibriumProfile,
    pub trace: SearchTrace,
    pub security: [ZeroSumSolution; 2],
}

/// Runs the full pipeline at accuracy `eps`.
pub fn folk_egal(game: &StochasticGame, eps: f64) -> Result<FolkEgalOutput> {
    crate::solvers::check_eps(eps)?;
    let zs1 = shapley_solve(game, Player::One, eps / 2.0)?;
    let zs2 = shapley_solve(game, Player::Two, eps / 2.0)?;
    let v = PayoffPoint::new(zs1.value, zs2.value);

    let r0 = solve_mdp_w(game, 1.0, eps / 4.0)?;
    let l0 = solve_mdp_w(game, 0.0, eps / 4.0)?;
    let r_left = line_side(r0.payoff, v, DEFAULT_TOL) != Side::Right;
    let l_right = line_side(l0.payoff, v, DEFAULT_TOL) != Side::Left;
    log::info!("disagreement {v}, R0 {}, L0 {}", r0.payoff, l0.payoff);

    let (lambda, target, left, right, trace) = if r_left && l_right {
        // both friend points on the line: the hull touches it in one point
        let trace = SearchTrace { nu0: 0.0, bound: 0, iterations: Vec::new(), mdp_solves: 2 };
        (1.0, l0.payoff, l0.clone(), l0, trace)
    } else if r_left {
        let trace = SearchTrace { nu0: 0.0, bound: 0, iterations: Vec::new(), mdp_solves: 2 };
        (0.0, r0.payoff, r0.clone(), r0, trace)
    } else if l_right {
        let trace = SearchTrace { nu0: 0.0, bound: 0, iterations: Vec::new(), mdp_solves: 2 };
        (1.0, l0.payoff, l0.clone(), l0, trace)
    } else {
        let nu0 = search::active_area(&l0, &r0);
        let t = iteration_bound(nu0, eps)?;
        let mut res = egal_search(game, l0, r0, t, v, eps)?;
        res.trace.mdp_solves += 2;
        (res.lambda, res.point, res.left, res.right, res.trace)
    };

    let egal = egal_value(target, v);
    let play = if egal <= eps {
        let (d1, d2) = (zs1.defender.clone(), zs2.defender.clone());
        let payoff = evaluate_mixed_pair(game, &d1, &d2, 1e-12)?;
        ProfilePlay::Defensive { d1, d2, payoff }
    } else {
        debug_assert!(mix_points(left.payoff, right.payoff, lambda).is_ok());
        ProfilePlay::Alternating {
            lambda,
            left_policy: left.policy,
            right_policy: right.policy,
            left_payoff: left.payoff,
            right_payoff: right.payoff,
            punish_p1: zs1.attacker.clone(),
            punish_p2: zs2.attacker.clone(),
        }
    };
    let profile = EquilibriumProfile { play, disagreement: v, target, egal_value: egal, eps };
    Ok(FolkEgalOutput { profile, trace, security: [zs1, zs2] })
}
