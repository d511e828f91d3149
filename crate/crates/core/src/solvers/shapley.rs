use serde::{Deserialize, Serialize};

use super::best_response::{best_response, Sense};
use crate::error::Result;
use crate::game::{Player, StochasticGame};
use crate::matrix::{solve_zero_sum, MatrixGame};
use crate::mdp::stopping_residual;
use crate::policy::MixedPolicy;

/// Output of Shapley value iteration for one maximizing player.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroSumSolution {
    pub maximizer: Player,
    /// Minimax value at the start state, within `eps` of the true value.
    pub value: f64,
    /// Maximizer's stationary defensive strategy.
    pub defender: MixedPolicy,
    /// Minimizer's stationary attack strategy.
    pub attacker: MixedPolicy,
    pub state_values: Vec<f64>,
    /// Exact payoff `defender` guarantees against any opponent.
    pub guaranteed: f64,
    /// Exact payoff `attacker` holds the maximizer to.
    pub cap: f64,
    pub sweeps: usize,
    pub residuals: Vec<f64>,
}

fn local_game(game: &StochasticGame, maximizer: Player, s: usize, v: &[f64]) -> MatrixGame {
    let (n1, n2) = (game.num_actions(Player::One), game.num_actions(Player::Two));
    let q = |a1: usize, a2: usize| {
        let j = game.joint_index(a1, a2);
        game.reward(maximizer, s, j)
            + game.gamma() * game.transitions(s, j).iter().map(|&(t, p)| p * v[t]).sum::<f64>()
    };
    let payoff = match maximizer {
        Player::One => (0..n1).flat_map(|a1| (0..n2).map(move |a2| (a1, a2))).map(|(a1, a2)| q(a1, a2)).collect(),
        Player::Two => (0..n2).flat_map(|a2| (0..n1).map(move |a1| (a1, a2))).map(|(a1, a2)| q(a1, a2)).collect(),
    };
    let (rows, cols) = match maximizer {
        Player::One => (n1, n2),
        Player::Two => (n2, n1),
    };
    MatrixGame::new(rows, cols, payoff).expect("finite local game")
}

/// Zero-sum value iteration on `maximizer`'s reward (the opponent minimizes it).
///
/// Sweeps stop once the sup-norm residual reaches `eps (1 - gamma) / (2 gamma)`.
/// The extracted strategies are then certified by exact best responses; if
/// the certified bracket is wider than `eps` the sweeps continue with a
/// tighter residual.
pub fn shapley_solve(game: &StochasticGame, maximizer: Player, eps: f64) -> Result<ZeroSumSolution> {
    super::check_eps(eps)?;
    let n = game.num_states();
    let minimizer = maximizer.other();
    let mut v = vec![0.0; n];
    let mut residuals = Vec::new();
    let mut threshold = stopping_residual(eps, game.gamma());
    loop {
        loop {
            let mut next = vec![0.0; n];
            let mut residual = 0.0f64;
            for s in (0..n).filter(|&s| !game.is_terminal(s)) {
                next[s] = solve_zero_sum(&local_game(game, maximizer, s, &v))?.value;
                residual = residual.max((next[s] - v[s]).abs());
            }
            v = next;
            residuals.push(residual);
            log::debug!("shapley({maximizer}) sweep {}: residual {residual:.3e}", residuals.len());
            if residual <= threshold {
                break;
            }
        }

        let mut def = Vec::with_capacity(n);
        let mut att = Vec::with_capacity(n);
        for s in 0..n {
            if game.is_terminal(s) {
                def.push(Vec::new());
                att.push(Vec::new());
            } else {
                let sol = solve_zero_sum(&local_game(game, maximizer, s, &v))?;
                def.push(sol.row_mix);
                att.push(sol.col_mix);
            }
        }
        let defender = MixedPolicy::new(maximizer, def)?;
        let attacker = MixedPolicy::new(minimizer, att)?;
        let tight = eps * 1e-3;
        let guaranteed =
            best_response(game, minimizer, &defender, maximizer, Sense::Minimize, tight)?.value;
        let cap = best_response(game, maximizer, &attacker, maximizer, Sense::Maximize, tight)?.value;
        let gap = cap - guaranteed;
        if gap <= eps || threshold < 1e-13 {
            let value = v[game.start()].clamp(guaranteed.min(cap), cap.max(guaranteed));
            return Ok(ZeroSumSolution {
                maximizer,
                value,
                defender,
                attacker,
                state_values: v,
                guaranteed,
                cap,
                sweeps: residuals.len(),
                residuals,
            });
        }
        log::debug!("shapley({maximizer}): certified gap {gap:.3e} > {eps}, tightening");
        threshold /= 4.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;

    fn repeated(table: &[Vec<f64>], gamma: f64) -> StochasticGame {
        let (n1, n2) = (table.len(), table[0].len());
        let mut b = GameBuilder::new(1, n1, n2, gamma);
        for a1 in 0..n1 {
            for a2 in 0..n2 {
                b.transition(0, a1, a2, 0, 1.0).reward(0, a1, a2, table[a1][a2], -table[a1][a2]);
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn gamma_zero_equals_stage_game() {
        let table = vec![vec![3.0, 0.0], vec![1.0, 2.0]];
        let g = repeated(&table, 0.0);
        let s = shapley_solve(&g, Player::One, 1e-6).unwrap();
        assert!((s.value - 1.5).abs() < 1e-9);
        let stage = solve_zero_sum(&MatrixGame::from_rows(&table).unwrap()).unwrap();
        assert!((s.value - stage.value).abs() < 1e-9);
    }

    #[test]
    fn rock_paper_scissors_is_zero_and_uniform() {
        let table = vec![vec![0.0, -1.0, 1.0], vec![1.0, 0.0, -1.0], vec![-1.0, 1.0, 0.0]];
        for gamma in [0.0, 0.5, 0.9] {
            let g = repeated(&table, gamma);
            for p in Player::both() {
                let s = shapley_solve(&g, p, 1e-4).unwrap();
                assert!(s.value.abs() < 1e-4);
                for x in s.defender.at(0).unwrap().iter().chain(s.attacker.at(0).unwrap()) {
                    assert!((x - 1.0 / 3.0).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn rejects_nonpositive_eps() {
        let g = repeated(&[vec![1.0]], 0.5);
        assert!(shapley_solve(&g, Player::One, 0.0).is_err());
        assert!(shapley_solve(&g, Player::One, -1.0).is_err());
    }

    #[test]
    fn residuals_contract() {
        let table = vec![vec![3.0, -1.0], vec![0.0, 2.0]];
        let g = repeated(&table, 0.9);
        let s = shapley_solve(&g, Player::One, 1e-6).unwrap();
        for w in s.residuals.windows(2).skip(1) {
            assert!(w[1] <= w[0] + 1e-9);
        }
        assert!(s.cap - s.guaranteed <= 1e-6);
    }
}
