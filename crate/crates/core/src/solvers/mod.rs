//! Stochastic-game solvers: Shapley value iteration, scalarized joint
//! control, best responses, and the friend / security / CE baselines.

mod best_response;
mod ce_vi;
mod friend;
mod security;
mod shapley;
mod weighted;

pub use best_response::{best_response, BestResponse, Sense};
pub use ce_vi::{ce_vi, default_ce_sweeps, CeSolution};
pub use friend::{friend_vi, FriendSolution};
pub use security::{security_profile, SecuritySolution};
pub use shapley::{shapley_solve, ZeroSumSolution};
pub use weighted::{solve_mdp_w, WeightedSolution};

use crate::error::{GameError, Result};

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(GameError::InvalidArgument(format!("accuracy {eps} must be positive")))
    }
}
