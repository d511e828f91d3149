use serde::{Deserialize, Serialize};

use super::shapley::shapley_solve;
use crate::error::Result;
use crate::eval::evaluate_correlated;
use crate::game::{Player, StochasticGame};
use crate::geometry::PayoffPoint;
use crate::matrix::{solve_ce_utilitarian, BimatrixGame};
use crate::mdp::stopping_residual;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CeSolution {
    pub payoff: PayoffPoint,
    /// Joint-action distribution per state (empty on terminals).
    pub dists: Vec<Vec<f64>>,
    pub converged: bool,
    pub sweeps: usize,
    pub residuals: Vec<f64>,
}

/// Sweep budget for [`ce_vi`]: ten times what Shapley iteration needs.
pub fn default_ce_sweeps(game: &StochasticGame, eps: f64) -> Result<usize> {
    Ok(10 * shapley_solve(game, Player::One, eps)?.sweeps.max(1))
}

fn q_bimatrix(game: &StochasticGame, s: usize, v1: &[f64], v2: &[f64]) -> BimatrixGame {
    let (n1, n2) = (game.num_actions(Player::One), game.num_actions(Player::Two));
    let mut q1 = Vec::with_capacity(n1 * n2);
    let mut q2 = Vec::with_capacity(n1 * n2);
    for j in 0..game.num_joint() {
        let (r1, r2) = game.rewards(s, j);
        let (mut c1, mut c2) = (0.0, 0.0);
        for &(t, p) in game.transitions(s, j) {
            c1 += p * v1[t];
            c2 += p * v2[t];
        }
        q1.push(r1 + game.gamma() * c1);
        q2.push(r2 + game.gamma() * c2);
    }
    BimatrixGame::new(n1, n2, q1, q2).expect("finite Q tables")
}

/// Value iteration with a utilitarian correlated equilibrium at every state.
/// Convergence is not guaranteed; a run that exhausts `max_sweeps` reports
/// `converged = false` and the distributions from its last sweep.
pub fn ce_vi(game: &StochasticGame, eps: f64, max_sweeps: usize) -> Result<CeSolution> {
    super::check_eps(eps)?;
    let max_sweeps = max_sweeps.max(1);
    let n = game.num_states();
    let nj = game.num_joint();
    let threshold = stopping_residual(eps, game.gamma());
    let (mut v1, mut v2) = (vec![0.0; n], vec![0.0; n]);
    let mut dists = vec![Vec::new(); n];
    let mut residuals = Vec::new();
    let mut converged = false;
    while residuals.len() < max_sweeps {
        let (mut n1, mut n2) = (vec![0.0; n], vec![0.0; n]);
        let mut residual = 0.0f64;
        for s in (0..n).filter(|&s| !game.is_terminal(s)) {
            let g = q_bimatrix(game, s, &v1, &v2);
            let d = solve_ce_utilitarian(&g)?;
            let (e1, e2) = g.expected(&d);
            n1[s] = e1;
            n2[s] = e2;
            residual = residual.max((e1 - v1[s]).abs()).max((e2 - v2[s]).abs());
            debug_assert_eq!(d.len(), nj);
            dists[s] = d;
        }
        v1 = n1;
        v2 = n2;
        residuals.push(residual);
        log::debug!("ce-vi sweep {}: residual {residual:.3e}", residuals.len());
        if residual <= threshold {
            converged = true;
            break;
        }
    }
    let payoff = evaluate_correlated(game, &dists, 1e-12)?;
    Ok(CeSolution { payoff, dists, converged, sweeps: residuals.len(), residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;

    #[test]
    fn dominant_joint_action_repeated() {
        // (0, 0) strictly dominant for both, worth (2, 3) per step
        let mut b = GameBuilder::new(1, 2, 2, 0.5);
        let r = [[(2.0, 3.0), (1.0, 0.0)], [(0.0, 1.0), (-1.0, -1.0)]];
        for a1 in 0..2 {
            for a2 in 0..2 {
                b.transition(0, a1, a2, 0, 1.0).reward(0, a1, a2, r[a1][a2].0, r[a1][a2].1);
            }
        }
        let g = b.build().unwrap();
        let s = ce_vi(&g, 1e-6, 1000).unwrap();
        assert!(s.converged);
        assert!((s.payoff.p1 - 4.0).abs() < 1e-6 && (s.payoff.p2 - 6.0).abs() < 1e-6);
        assert!((s.dists[0][0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sweep_cap_reports_nonconvergence() {
        let mut b = GameBuilder::new(1, 1, 1, 0.9);
        b.transition(0, 0, 0, 0, 1.0).reward(0, 0, 0, 1.0, 1.0);
        let g = b.build().unwrap();
        let s = ce_vi(&g, 1e-9, 3).unwrap();
        assert!(!s.converged);
        assert_eq!(s.sweeps, 3);
    }
}
