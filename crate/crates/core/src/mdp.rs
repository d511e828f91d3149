//! Finite discounted MDPs solved by value iteration polished with policy
//! iteration, so returned policies are exactly optimal up to float noise.

use crate::eval::solve_chain;

const MAX_SWEEPS: usize = 1_000_000;
const MAX_POLICY_ROUNDS: usize = 10_000;

/// Relative tolerance under which two Q-values count as tied.
pub(crate) const TIE_TOL: f64 = 1e-11;

#[derive(Debug, Clone)]
pub(crate) struct Mdp {
    pub gamma: f64,
    pub n_actions: usize,
    pub terminal: Vec<bool>,
    /// `[state][action]` successor lists.
    pub trans: Vec<Vec<Vec<(usize, f64)>>>,
    /// `[state][action]` rewards.
    pub reward: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub(crate) struct MdpSolution {
    /// Chosen action per state (0 on terminals).
    pub policy: Vec<usize>,
    pub values: Vec<f64>,
    pub sweeps: usize,
    pub residuals: Vec<f64>,
}

/// Sup-norm residual at which value iteration is `eps`-accurate.
pub(crate) fn stopping_residual(eps: f64, gamma: f64) -> f64 {
    if gamma == 0.0 {
        f64::INFINITY
    } else {
        eps * (1.0 - gamma) / (2.0 * gamma)
    }
}

fn tied(q: f64, best: f64) -> bool {
    q >= best - TIE_TOL * best.abs().max(1.0)
}

impl Mdp {
    fn n_states(&self) -> usize {
        self.terminal.len()
    }

    fn q(&self, s: usize, a: usize, v: &[f64]) -> f64 {
        self.reward[s][a] + self.gamma * self.trans[s][a].iter().map(|&(t, p)| p * v[t]).sum::<f64>()
    }

    /// Smallest action index whose Q-value ties the maximum.
    fn greedy(&self, s: usize, v: &[f64]) -> usize {
        let qs: Vec<f64> = (0..self.n_actions).map(|a| self.q(s, a, v)).collect();
        let best = qs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        qs.iter().position(|&q| tied(q, best)).unwrap_or(0)
    }

    fn evaluate(&self, policy: &[usize]) -> Vec<f64> {
        let n = self.n_states();
        let mut local = vec![usize::MAX; n];
        let mut order = Vec::new();
        for s in 0..n {
            if !self.terminal[s] {
                local[s] = order.len();
                order.push(s);
            }
        }
        let rows: Vec<Vec<(usize, f64)>> = order
            .iter()
            .map(|&s| {
                self.trans[s][policy[s]]
                    .iter()
                    .filter(|&&(t, _)| !self.terminal[t])
                    .map(|&(t, p)| (local[t], p))
                    .collect()
            })
            .collect();
        let r: Vec<f64> = order.iter().map(|&s| self.reward[s][policy[s]]).collect();
        let sol = solve_chain(&rows, &[&r], self.gamma, 1e-12);
        let mut v = vec![0.0; n];
        for (i, &s) in order.iter().enumerate() {
            v[s] = sol[0][i];
        }
        v
    }

    pub fn solve(&self, eps: f64) -> MdpSolution {
        let n = self.n_states();
        let threshold = stopping_residual(eps, self.gamma);
        let mut v = vec![0.0; n];
        let mut residuals = Vec::new();
        let mut sweeps = 0;
        while sweeps < MAX_SWEEPS {
            let mut next = vec![0.0; n];
            let mut residual = 0.0f64;
            for s in 0..n {
                if self.terminal[s] {
                    continue;
                }
                next[s] = (0..self.n_actions)
                    .map(|a| self.q(s, a, &v))
                    .fold(f64::NEG_INFINITY, f64::max);
                residual = residual.max((next[s] - v[s]).abs());
            }
            v = next;
            sweeps += 1;
            residuals.push(residual);
            log::trace!("mdp sweep {sweeps}: residual {residual:.3e}");
            if residual <= threshold {
                break;
            }
        }

        let mut policy: Vec<usize> =
            (0..n).map(|s| if self.terminal[s] { 0 } else { self.greedy(s, &v) }).collect();
        let mut values = self.evaluate(&policy);
        for _ in 0..MAX_POLICY_ROUNDS {
            let mut changed = false;
            for s in 0..n {
                if self.terminal[s] {
                    continue;
                }
                let current = self.q(s, policy[s], &values);
                let qs: Vec<f64> = (0..self.n_actions).map(|a| self.q(s, a, &values)).collect();
                let best = qs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                if !tied(current, best) {
                    policy[s] = qs.iter().position(|&q| tied(q, best)).unwrap_or(0);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            values = self.evaluate(&policy);
        }
        // canonical lexicographic choice among tied optimal actions
        let canonical: Vec<usize> =
            (0..n).map(|s| if self.terminal[s] { 0 } else { self.greedy(s, &values) }).collect();
        if canonical != policy {
            policy = canonical;
            values = self.evaluate(&policy);
        }
        MdpSolution { policy, values, sweeps, residuals }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_better_chain_and_breaks_ties_low() {
        // state 0: action 0 stays (+1), action 1 stays (+1), action 2 -> terminal (+5)
        let mdp = Mdp {
            gamma: 0.5,
            n_actions: 3,
            terminal: vec![false, true],
            trans: vec![
                vec![vec![(0, 1.0)], vec![(0, 1.0)], vec![(1, 1.0)]],
                vec![vec![(1, 1.0)]; 3],
            ],
            reward: vec![vec![1.0, 1.0, 1.5], vec![0.0; 3]],
        };
        let sol = mdp.solve(1e-6);
        assert_eq!(sol.policy[0], 0);
        assert!((sol.values[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_zero_is_one_sweep() {
        let mdp = Mdp {
            gamma: 0.0,
            n_actions: 2,
            terminal: vec![false],
            trans: vec![vec![vec![(0, 1.0)], vec![(0, 1.0)]]],
            reward: vec![vec![1.0, 2.0]],
        };
        let sol = mdp.solve(1e-3);
        assert_eq!(sol.sweeps, 1);
        assert_eq!(sol.policy[0], 1);
    }
}
