use serde::{Deserialize, Serialize};

use super::weighted::solve_mdp_w;
use crate::error::Result;
use crate::eval::evaluate_mixed_pair;
use crate::game::{Player, StochasticGame};
use crate::geometry::PayoffPoint;
use crate::policy::MixedPolicy;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FriendSolution {
    pub payoff: PayoffPoint,
    pub p1_policy: MixedPolicy,
    pub p2_policy: MixedPolicy,
}

/// Each player plans as if the opponent will help maximize its own reward,
/// keeps its own action component, and the two plans are played together.
pub fn friend_vi(game: &StochasticGame, eps: f64) -> Result<FriendSolution> {
    let own1 = solve_mdp_w(game, 1.0, eps)?;
    let own2 = solve_mdp_w(game, 0.0, eps)?;
    let p1_policy = own1.policy.component(game, Player::One);
    let p2_policy = own2.policy.component(game, Player::Two);
    let payoff = evaluate_mixed_pair(game, &p1_policy, &p2_policy, 1e-12)?;
    Ok(FriendSolution { payoff, p1_policy, p2_policy })
}
