//! Vector-valued evaluation of stationary policies.
//!
//! Every evaluation reduces to a Markov chain with two reward streams over
//! the non-terminal states reachable from the start. Chains with at most
//! [`DIRECT_SOLVE_LIMIT`] states are solved exactly by LU; larger ones are
//! iterated until the Bellman residual drops below `tol * (1 - gamma)`.

use nalgebra::{DMatrix, DVector};

use crate::error::{GameError, Result};
use crate::game::{Player, StochasticGame};
use crate::geometry::PayoffPoint;
use crate::policy::{JointPolicy, MixedPolicy};

pub const DIRECT_SOLVE_LIMIT: usize = 2000;

/// Per-state values of both players under a fixed behavior.
#[derive(Debug, Clone, PartialEq)]
pub struct StateValues {
    pub v1: Vec<f64>,
    pub v2: Vec<f64>,
    /// States visited with positive probability from the start.
    pub reachable: Vec<bool>,
}

impl StateValues {
    pub fn at_start(&self, game: &StochasticGame) -> PayoffPoint {
        PayoffPoint::new(self.v1[game.start()], self.v2[game.start()])
    }
}

/// Solves `V = r + gamma * P V` for each reward vector. `rows[i]` lists
/// successors within `0..rows.len()`; mass leaving that range is worth zero.
pub(crate) fn solve_chain(
    rows: &[Vec<(usize, f64)>],
    rewards: &[&[f64]],
    gamma: f64,
    tol: f64,
) -> Vec<Vec<f64>> {
    let n = rows.len();
    if n == 0 {
        return rewards.iter().map(|_| Vec::new()).collect();
    }
    if n <= DIRECT_SOLVE_LIMIT {
        let mut a = DMatrix::<f64>::identity(n, n);
        for (i, row) in rows.iter().enumerate() {
            for &(j, p) in row {
                a[(i, j)] -= gamma * p;
            }
        }
        let lu = a.lu();
        rewards
            .iter()
            .map(|r| {
                let b = DVector::from_column_slice(r);
                lu.solve(&b).expect("I - gamma P is nonsingular for gamma < 1").as_slice().to_vec()
            })
            .collect()
    } else {
        rewards
            .iter()
            .map(|r| iterate_chain(rows, r, gamma, tol))
            .collect()
    }
}

fn iterate_chain(rows: &[Vec<(usize, f64)>], r: &[f64], gamma: f64, tol: f64) -> Vec<f64> {
    let threshold = (tol * (1.0 - gamma)).max(f64::EPSILON);
    let mut v = vec![0.0; rows.len()];
    loop {
        let mut residual = 0.0f64;
        for i in 0..rows.len() {
            let next = r[i] + gamma * rows[i].iter().map(|&(j, p)| p * v[j]).sum::<f64>();
            residual = residual.max((next - v[i]).abs());
            v[i] = next;
        }
        if residual <= threshold {
            return v;
        }
    }
}

/// Evaluates a behavior given as a per-state joint-action distribution
/// (indexed like the game's joint actions). `None` marks undefined states.
pub fn evaluate_behavior<'a, F>(game: &StochasticGame, behavior: F, tol: f64) -> Result<StateValues>
where
    F: Fn(usize) -> Option<std::borrow::Cow<'a, [f64]>>,
{
    if !(tol > 0.0) {
        return Err(GameError::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let n = game.num_states();
    let mut local = vec![usize::MAX; n];
    let mut order = Vec::new();
    let mut reachable = vec![false; n];
    let mut stack = vec![game.start()];
    reachable[game.start()] = true;
    let mut dists: Vec<Option<std::borrow::Cow<'a, [f64]>>> = (0..n).map(|_| None).collect();
    while let Some(s) = stack.pop() {
        if game.is_terminal(s) {
            continue;
        }
        let d = behavior(s).ok_or(GameError::IncompletePolicy { state: s })?;
        if d.len() != game.num_joint() {
            return Err(GameError::InvalidPolicy(format!("behavior at state {s} has wrong arity")));
        }
        local[s] = order.len();
        order.push(s);
        for (j, &pj) in d.iter().enumerate() {
            if pj <= 0.0 {
                continue;
            }
            for &(t, _) in game.transitions(s, j) {
                if !reachable[t] {
                    reachable[t] = true;
                    stack.push(t);
                }
            }
        }
        dists[s] = Some(d);
    }

    let m = order.len();
    let mut rows = Vec::with_capacity(m);
    let mut r1 = Vec::with_capacity(m);
    let mut r2 = Vec::with_capacity(m);
    for &s in &order {
        let d = dists[s].as_ref().expect("visited states carry a distribution");
        let mut row: Vec<(usize, f64)> = Vec::new();
        let (mut e1, mut e2) = (0.0, 0.0);
        for (j, &pj) in d.iter().enumerate() {
            if pj <= 0.0 {
                continue;
            }
            let (x1, x2) = game.rewards(s, j);
            e1 += pj * x1;
            e2 += pj * x2;
            for &(t, pt) in game.transitions(s, j) {
                if game.is_terminal(t) {
                    continue;
                }
                let lt = local[t];
                match row.iter_mut().find(|(k, _)| *k == lt) {
                    Some(entry) => entry.1 += pj * pt,
                    None => row.push((lt, pj * pt)),
                }
            }
        }
        rows.push(row);
        r1.push(e1);
        r2.push(e2);
    }
    let sol = solve_chain(&rows, &[&r1, &r2], game.gamma(), tol);
    let mut v1 = vec![0.0; n];
    let mut v2 = vec![0.0; n];
    for (i, &s) in order.iter().enumerate() {
        v1[s] = sol[0][i];
        v2[s] = sol[1][i];
    }
    Ok(StateValues { v1, v2, reachable })
}

fn point_mass(game: &StochasticGame, a1: usize, a2: usize) -> Vec<f64> {
    let mut d = vec![0.0; game.num_joint()];
    d[game.joint_index(a1, a2)] = 1.0;
    d
}

/// Per-state values of a deterministic joint policy.
pub fn joint_state_values(game: &StochasticGame, pi: &JointPolicy, tol: f64) -> Result<StateValues> {
    pi.validate(game)?;
    evaluate_behavior(game, |s| pi.get(s).map(|(a1, a2)| point_mass(game, a1, a2).into()), tol)
}

/// Both players' expected discounted returns from the start under `pi`.
pub fn evaluate_joint(game: &StochasticGame, pi: &JointPolicy, tol: f64) -> Result<PayoffPoint> {
    Ok(joint_state_values(game, pi, tol)?.at_start(game))
}

fn product(game: &StochasticGame, d1: &[f64], d2: &[f64]) -> Vec<f64> {
    let mut d = vec![0.0; game.num_joint()];
    for (a1, &p1) in d1.iter().enumerate() {
        for (a2, &p2) in d2.iter().enumerate() {
            d[game.joint_index(a1, a2)] = p1 * p2;
        }
    }
    d
}

/// Per-state values when both players randomize independently.
pub fn mixed_state_values(
    game: &StochasticGame,
    m1: &MixedPolicy,
    m2: &MixedPolicy,
    tol: f64,
) -> Result<StateValues> {
    if m1.player != Player::One || m2.player != Player::Two {
        return Err(GameError::InvalidPolicy("mixed policies given for the wrong players".into()));
    }
    for (m, p) in [(m1, Player::One), (m2, Player::Two)] {
        if m.dist.len() != game.num_states() {
            return Err(GameError::InvalidPolicy(format!("{p} policy has wrong length")));
        }
        if m.dist.iter().any(|d| !d.is_empty() && d.len() != game.num_actions(p)) {
            return Err(GameError::InvalidPolicy(format!("{p} policy has wrong arity")));
        }
    }
    evaluate_behavior(
        game,
        |s| match (m1.at(s), m2.at(s)) {
            (Some(d1), Some(d2)) => Some(product(game, d1, d2).into()),
            _ => None,
        },
        tol,
    )
}

/// Expected returns under the product of two stationary mixed policies.
pub fn evaluate_mixed_pair(
    game: &StochasticGame,
    m1: &MixedPolicy,
    m2: &MixedPolicy,
    tol: f64,
) -> Result<PayoffPoint> {
    Ok(mixed_state_values(game, m1, m2, tol)?.at_start(game))
}

/// Expected returns when each state's joint action is drawn from a
/// correlated distribution (empty vector = undefined).
pub fn evaluate_correlated(game: &StochasticGame, dists: &[Vec<f64>], tol: f64) -> Result<PayoffPoint> {
    Ok(evaluate_behavior(
        game,
        |s| dists.get(s).filter(|d| !d.is_empty()).map(|d| d.as_slice().into()),
        tol,
    )?
    .at_start(game))
}
