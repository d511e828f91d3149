#![allow(dead_code)]

use folkegal_core::{GameBuilder, StochasticGame};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random game with `n` live states plus an absorbing terminal (when
/// `with_terminal`), sparse transitions and integer-ish rewards.
pub fn random_game(
    rng: &mut ChaCha8Rng,
    n: usize,
    n1: usize,
    n2: usize,
    gamma: f64,
    zero_sum: bool,
    with_terminal: bool,
) -> StochasticGame {
    let total = n + usize::from(with_terminal);
    let mut b = GameBuilder::new(total, n1, n2, gamma);
    if with_terminal {
        b.terminal(n);
    }
    for s in 0..n {
        for a1 in 0..n1 {
            for a2 in 0..n2 {
                let k = rng.gen_range(1..=total.min(3));
                let mut weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.1..1.0)).collect();
                let sum: f64 = weights.iter().sum();
                weights.iter_mut().for_each(|w| *w /= sum);
                for w in weights {
                    b.transition(s, a1, a2, rng.gen_range(0..total), w);
                }
                let r1 = (rng.gen_range(-10.0f64..10.0) * 4.0).round() / 4.0;
                let r2 = if zero_sum { -r1 } else { (rng.gen_range(-10.0f64..10.0) * 4.0).round() / 4.0 };
                b.reward(s, a1, a2, r1, r2);
            }
        }
    }
    b.build().unwrap()
}

pub fn random_small(rng: &mut ChaCha8Rng, max_states: usize, zero_sum: bool) -> StochasticGame {
    let n = rng.gen_range(1..=max_states);
    let n1 = rng.gen_range(1..=3);
    let n2 = rng.gen_range(1..=3);
    let gamma = rng.gen_range(0.0..0.9);
    let with_terminal = rng.gen_bool(0.5);
    random_game(rng, n, n1, n2, gamma, zero_sum, with_terminal)
}

/// Zero-sum value by support enumeration: tries every pair of equal-size
/// supports, solves the indifference equations, and keeps the pair that is
/// an equilibrium. Independent of the simplex code.
pub fn support_enumeration_value(a: &[Vec<f64>]) -> f64 {
    use nalgebra::{DMatrix, DVector};
    let (m, n) = (a.len(), a[0].len());
    let subsets = |size: usize, k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << size)
            .filter(|mask| mask.count_ones() as usize == k)
            .map(|mask| (0..size).filter(|i| mask >> i & 1 == 1).collect())
            .collect()
    };
    let tol = 1e-9 * a.iter().flatten().fold(1.0f64, |x, y| x.max(y.abs()));
    for k in 1..=m.min(n) {
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                // unknowns: x over rows, then v; equations: columns in support + sum
                let mut mx = DMatrix::<f64>::zeros(k + 1, k + 1);
                let mut my = DMatrix::<f64>::zeros(k + 1, k + 1);
                let mut rhs = DVector::<f64>::zeros(k + 1);
                rhs[k] = 1.0;
                for (c, &j) in cols.iter().enumerate() {
                    for (r, &i) in rows.iter().enumerate() {
                        mx[(c, r)] = a[i][j];
                        my[(r, c)] = a[i][j];
                    }
                    mx[(c, k)] = -1.0;
                }
                for r in 0..k {
                    my[(r, k)] = -1.0;
                }
                for t in 0..k {
                    mx[(k, t)] = 1.0;
                    my[(k, t)] = 1.0;
                }
                let (Some(xs), Some(ys)) = (mx.lu().solve(&rhs), my.lu().solve(&rhs)) else {
                    continue;
                };
                let v = xs[k];
                if (v - ys[k]).abs() > tol {
                    continue;
                }
                if xs.iter().take(k).chain(ys.iter().take(k)).any(|&p| p < -1e-12) {
                    continue;
                }
                let mut x = vec![0.0; m];
                let mut y = vec![0.0; n];
                for (r, &i) in rows.iter().enumerate() {
                    x[i] = xs[r];
                }
                for (c, &j) in cols.iter().enumerate() {
                    y[j] = ys[c];
                }
                let row_ok = (0..n).all(|j| (0..m).map(|i| x[i] * a[i][j]).sum::<f64>() >= v - tol);
                let col_ok = (0..m).all(|i| (0..n).map(|j| y[j] * a[i][j]).sum::<f64>() <= v + tol);
                if row_ok && col_ok {
                    return v;
                }
            }
        }
    }
    panic!("support enumeration found no equilibrium");
}

/// Zero-sum value at the start state by value iteration with
/// support-enumeration stage solves, iterated to a residual of 1e-12.
pub fn reference_zero_sum_value(g: &StochasticGame, maximizer: folkegal_core::Player) -> f64 {
    use folkegal_core::Player;
    let n = g.num_states();
    let (n1, n2) = (g.num_actions(Player::One), g.num_actions(Player::Two));
    let mut v = vec![0.0; n];
    for _ in 0..100_000 {
        let mut next = vec![0.0; n];
        let mut res = 0.0f64;
        for s in (0..n).filter(|&s| !g.is_terminal(s)) {
            let q = |a1: usize, a2: usize| {
                let j = g.joint_index(a1, a2);
                g.reward(maximizer, s, j)
                    + g.gamma() * g.transitions(s, j).iter().map(|&(t, p)| p * v[t]).sum::<f64>()
            };
            let table: Vec<Vec<f64>> = match maximizer {
                Player::One => (0..n1).map(|a1| (0..n2).map(|a2| q(a1, a2)).collect()).collect(),
                Player::Two => (0..n2).map(|a2| (0..n1).map(|a1| q(a1, a2)).collect()).collect(),
            };
            next[s] = support_enumeration_value(&table);
            res = res.max((next[s] - v[s]).abs());
        }
        v = next;
        if res <= 1e-12 {
            break;
        }
    }
    v[g.start()]
}

/// Random stationary mixed policy for `player`.
pub fn random_mixed(
    rng: &mut ChaCha8Rng,
    g: &StochasticGame,
    player: folkegal_core::Player,
) -> folkegal_core::MixedPolicy {
    let k = g.num_actions(player);
    let dist = (0..g.num_states())
        .map(|s| {
            if g.is_terminal(s) {
                return Vec::new();
            }
            let mut d: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..1.0)).collect();
            if rng.gen_bool(0.3) {
                // occasionally pure
                let a = rng.gen_range(0..k);
                d.iter_mut().enumerate().for_each(|(i, x)| *x = if i == a { 1.0 } else { 0.0 });
            }
            let sum: f64 = d.iter().sum();
            d.iter().map(|x| x / sum).collect()
        })
        .collect();
    folkegal_core::MixedPolicy { player, dist }
}
