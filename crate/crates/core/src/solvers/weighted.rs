use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::eval::evaluate_joint;
use crate::game::StochasticGame;
use crate::geometry::PayoffPoint;
use crate::mdp::Mdp;
use crate::policy::JointPolicy;

/// Optimal joint control of the scalarized game `w r1 + (1 - w) r2`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedSolution {
    pub weight: f64,
    pub policy: JointPolicy,
    /// Vector payoff of `policy` from the start state.
    pub payoff: PayoffPoint,
    /// `payoff.sigma(weight)`.
    pub scalar: f64,
    pub sweeps: usize,
    pub residuals: Vec<f64>,
}

pub(crate) fn scalarized_mdp(game: &StochasticGame, w: f64) -> Mdp {
    let n = game.num_states();
    let nj = game.num_joint();
    let terminal: Vec<bool> = (0..n).map(|s| game.is_terminal(s)).collect();
    let trans = (0..n).map(|s| (0..nj).map(|j| game.transitions(s, j).to_vec()).collect()).collect();
    let reward = (0..n)
        .map(|s| {
            (0..nj)
                .map(|j| {
                    let (r1, r2) = game.rewards(s, j);
                    w * r1 + (1.0 - w) * r2
                })
                .collect()
        })
        .collect();
    Mdp { gamma: game.gamma(), n_actions: nj, terminal, trans, reward }
}

/// Solves MDP(w) over joint actions. Ties between joint actions go to the
/// smallest joint index `a1 * |A2| + a2`.
pub fn solve_mdp_w(game: &StochasticGame, w: f64, eps: f64) -> Result<WeightedSolution> {
    super::check_eps(eps)?;
    if !(0.0..=1.0).contains(&w) {
        return Err(GameError::InvalidArgument(format!("weight {w} outside [0, 1]")));
    }
    let sol = scalarized_mdp(game, w).solve(eps);
    let policy = JointPolicy::from_joint_indices(game, &sol.policy);
    let payoff = evaluate_joint(game, &policy, 1e-12)?;
    Ok(WeightedSolution {
        weight: w,
        scalar: payoff.sigma(w),
        policy,
        payoff,
        sweeps: sol.sweeps,
        residuals: sol.residuals,
    })
}
