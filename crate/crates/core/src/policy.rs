//! Stationary policies: deterministic joint control and per-player mixtures.

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::game::{Player, StochasticGame};

/// Tolerance on mixed-strategy sums.
pub const DIST_TOL: f64 = 1e-12;

/// A deterministic stationary joint policy: one joint action per state.
/// `None` marks states the policy leaves undefined (terminal or unreachable).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointPolicy {
    pub choice: Vec<Option<(usize, usize)>>,
}

impl JointPolicy {
    pub fn new(choice: Vec<Option<(usize, usize)>>) -> Self {
        Self { choice }
    }

    /// Builds a policy from joint-action indices, leaving terminals undefined.
    pub fn from_joint_indices(game: &StochasticGame, joint: &[usize]) -> Self {
        let choice = joint
            .iter()
            .enumerate()
            .map(|(s, &j)| (!game.is_terminal(s)).then(|| game.split_joint(j)))
            .collect();
        Self { choice }
    }

    pub fn get(&self, s: usize) -> Option<(usize, usize)> {
        self.choice.get(s).copied().flatten()
    }

    /// The deterministic mixed policy playing `player`'s component.
    pub fn component(&self, game: &StochasticGame, player: Player) -> MixedPolicy {
        let n = game.num_actions(player);
        let dist = self
            .choice
            .iter()
            .map(|c| match c {
                Some((a1, a2)) => {
                    let a = if player == Player::One { *a1 } else { *a2 };
                    let mut d = vec![0.0; n];
                    d[a] = 1.0;
                    d
                }
                None => Vec::new(),
            })
            .collect();
        MixedPolicy { player, dist }
    }

    pub fn validate(&self, game: &StochasticGame) -> Result<()> {
        if self.choice.len() != game.num_states() {
            return Err(GameError::InvalidPolicy(format!(
                "policy covers {} states, game has {}",
                self.choice.len(),
                game.num_states()
            )));
        }
        for (s, c) in self.choice.iter().enumerate() {
            if let Some((a1, a2)) = c {
                if *a1 >= game.num_actions(Player::One) || *a2 >= game.num_actions(Player::Two) {
                    return Err(GameError::InvalidPolicy(format!("action out of range at state {s}")));
                }
            }
        }
        Ok(())
    }
}

/// A stationary mixed policy for one player. An empty distribution marks a
/// state where the policy is undefined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedPolicy {
    pub player: Player,
    pub dist: Vec<Vec<f64>>,
}

impl MixedPolicy {
    pub fn new(player: Player, dist: Vec<Vec<f64>>) -> Result<Self> {
        let p = Self { player, dist };
        for (s, d) in p.dist.iter().enumerate() {
            if d.is_empty() {
                continue;
            }
            if d.iter().any(|&x| !(x >= -DIST_TOL)) {
                return Err(GameError::InvalidPolicy(format!("negative probability at state {s}")));
            }
            let total: f64 = d.iter().sum();
            if (total - 1.0).abs() > DIST_TOL * d.len() as f64 {
                return Err(GameError::InvalidPolicy(format!(
                    "distribution at state {s} sums to {total}"
                )));
            }
        }
        Ok(p)
    }

    /// Uniform over all actions at every non-terminal state.
    pub fn uniform(game: &StochasticGame, player: Player) -> Self {
        let n = game.num_actions(player);
        let dist = (0..game.num_states())
            .map(|s| if game.is_terminal(s) { Vec::new() } else { vec![1.0 / n as f64; n] })
            .collect();
        Self { player, dist }
    }

    /// Point masses on the given actions (`None` leaves the state undefined).
    pub fn deterministic(game: &StochasticGame, player: Player, actions: &[Option<usize>]) -> Self {
        let n = game.num_actions(player);
        let dist = actions
            .iter()
            .map(|a| match a {
                Some(a) => {
                    let mut d = vec![0.0; n];
                    d[*a] = 1.0;
                    d
                }
                None => Vec::new(),
            })
            .collect();
        Self { player, dist }
    }

    pub fn at(&self, s: usize) -> Option<&[f64]> {
        self.dist.get(s).filter(|d| !d.is_empty()).map(|d| d.as_slice())
    }

    /// Clips tiny negative LP noise and renormalizes.
    pub(crate) fn clean(dist: &mut [f64]) {
        for x in dist.iter_mut() {
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        let total: f64 = dist.iter().sum();
        if total > 0.0 {
            dist.iter_mut().for_each(|x| *x /= total);
        }
    }
}
