use serde::{Deserialize, Serialize};

use super::shapley::{shapley_solve, ZeroSumSolution};
use crate::error::Result;
use crate::eval::evaluate_mixed_pair;
use crate::game::{Player, StochasticGame};
use crate::geometry::PayoffPoint;
use crate::policy::MixedPolicy;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SecuritySolution {
    /// Payoff when both defensive strategies meet.
    pub payoff: PayoffPoint,
    pub d1: MixedPolicy,
    pub d2: MixedPolicy,
    /// Security values `(v1, v2)`.
    pub disagreement: PayoffPoint,
    pub zero_sum1: ZeroSumSolution,
    pub zero_sum2: ZeroSumSolution,
}

/// Both players play their maximin strategies.
pub fn security_profile(game: &StochasticGame, eps: f64) -> Result<SecuritySolution> {
    let zero_sum1 = shapley_solve(game, Player::One, eps)?;
    let zero_sum2 = shapley_solve(game, Player::Two, eps)?;
    let d1 = zero_sum1.defender.clone();
    let d2 = zero_sum2.defender.clone();
    let payoff = evaluate_mixed_pair(game, &d1, &d2, 1e-12)?;
    Ok(SecuritySolution {
        payoff,
        d1,
        d2,
        disagreement: PayoffPoint::new(zero_sum1.value, zero_sum2.value),
        zero_sum1,
        zero_sum2,
    })
}
