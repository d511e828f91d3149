//! One-shot matrix games: zero-sum minimax and utilitarian correlated equilibria.

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::lp::{LinearProgram, Relation};
use crate::policy::MixedPolicy;

/// A zero-sum matrix game; the row player maximizes `payoff[i][j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixGame {
    rows: usize,
    cols: usize,
    payoff: Vec<f64>,
}

impl MatrixGame {
    pub fn new(rows: usize, cols: usize, payoff: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || payoff.len() != rows * cols {
            return Err(GameError::InvalidArgument(format!(
                "matrix game needs a nonempty {rows}x{cols} payoff table"
            )));
        }
        if payoff.iter().any(|x| !x.is_finite()) {
            return Err(GameError::InvalidArgument("non-finite payoff".into()));
        }
        Ok(Self { rows, cols, payoff })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GameError::InvalidArgument("ragged payoff rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.payoff[i * self.cols + j]
    }

    pub fn transpose_negated(&self) -> MatrixGame {
        let mut payoff = Vec::with_capacity(self.payoff.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                payoff.push(-self.get(i, j));
            }
        }
        MatrixGame { rows: self.cols, cols: self.rows, payoff }
    }

    /// Expected payoff of a row mixture against each pure column.
    pub fn row_guarantees(&self, row_mix: &[f64]) -> Vec<f64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| row_mix[i] * self.get(i, j)).sum())
            .collect()
    }

    /// Expected payoff of each pure row against a column mixture.
    pub fn col_caps(&self, col_mix: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| col_mix[j] * self.get(i, j)).sum())
            .collect()
    }
}

/// Minimax solution of a [`MatrixGame`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixSolution {
    /// Value guaranteed by `row_mix` (row LP optimum).
    pub value: f64,
    /// Value the column player holds the row player to (column LP optimum).
    pub upper_value: f64,
    pub row_mix: Vec<f64>,
    pub col_mix: Vec<f64>,
}

/// Solves a zero-sum matrix game by two linear programs, one per player.
///
/// Payoffs are shifted to be at least 1, after which the row player's
/// problem becomes `min sum(u) s.t. A^T u >= 1, u >= 0` with value
/// `1 / sum(u)`; the column player's problem is the matching maximization.
pub fn solve_zero_sum(g: &MatrixGame) -> Result<MatrixSolution> {
    let lo = g.payoff.iter().cloned().fold(f64::INFINITY, f64::min);
    let shift = 1.0 - lo;
    let a = |i: usize, j: usize| g.get(i, j) + shift;

    let mut row_lp = LinearProgram::new(vec![-1.0; g.rows]);
    for j in 0..g.cols {
        row_lp.add((0..g.rows).map(|i| a(i, j)).collect(), Relation::Ge, 1.0);
    }
    let row = row_lp.maximize()?;
    let total: f64 = row.x.iter().sum();
    if !(total > 0.0) {
        return Err(GameError::Solver("degenerate row program".into()));
    }
    let mut row_mix: Vec<f64> = row.x.iter().map(|u| u / total).collect();
    MixedPolicy::clean(&mut row_mix);

    let mut col_lp = LinearProgram::new(vec![1.0; g.cols]);
    for i in 0..g.rows {
        col_lp.add((0..g.cols).map(|j| a(i, j)).collect(), Relation::Le, 1.0);
    }
    let col = col_lp.maximize()?;
    let col_total: f64 = col.x.iter().sum();
    if !(col_total > 0.0) {
        return Err(GameError::Solver("degenerate column program".into()));
    }
    let mut col_mix: Vec<f64> = col.x.iter().map(|y| y / col_total).collect();
    MixedPolicy::clean(&mut col_mix);

    Ok(MatrixSolution {
        value: 1.0 / total - shift,
        upper_value: 1.0 / col_total - shift,
        row_mix,
        col_mix,
    })
}

/// A general-sum two-player matrix game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BimatrixGame {
    rows: usize,
    cols: usize,
    payoff1: Vec<f64>,
    payoff2: Vec<f64>,
}

impl BimatrixGame {
    pub fn new(rows: usize, cols: usize, payoff1: Vec<f64>, payoff2: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || payoff1.len() != rows * cols || payoff2.len() != rows * cols {
            return Err(GameError::InvalidArgument(format!(
                "bimatrix game needs two nonempty {rows}x{cols} tables"
            )));
        }
        if payoff1.iter().chain(&payoff2).any(|x| !x.is_finite()) {
            return Err(GameError::InvalidArgument("non-finite payoff".into()));
        }
        Ok(Self { rows, cols, payoff1, payoff2 })
    }

    pub fn from_rows(p1: &[Vec<f64>], p2: &[Vec<f64>]) -> Result<Self> {
        let cols = p1.first().map_or(0, |r| r.len());
        if p1.len() != p2.len() || p1.iter().chain(p2).any(|r| r.len() != cols) {
            return Err(GameError::InvalidArgument("mismatched payoff tables".into()));
        }
        Self::new(p1.len(), cols, p1.concat(), p2.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn payoff(&self, player: crate::Player, i: usize, j: usize) -> f64 {
        match player {
            crate::Player::One => self.payoff1[i * self.cols + j],
            crate::Player::Two => self.payoff2[i * self.cols + j],
        }
    }

    /// Largest gain any player gets by remapping one recommendation, over
    /// recommendations and deviations. Non-positive means `dist` is a CE.
    pub fn max_deviation_gain(&self, dist: &[f64]) -> f64 {
        use crate::Player::{One, Two};
        let mut worst = f64::NEG_INFINITY;
        for i in 0..self.rows {
            for k in 0..self.rows {
                if k != i {
                    let gain: f64 = (0..self.cols)
                        .map(|j| dist[i * self.cols + j] * (self.payoff(One, k, j) - self.payoff(One, i, j)))
                        .sum();
                    worst = worst.max(gain);
                }
            }
        }
        for j in 0..self.cols {
            for k in 0..self.cols {
                if k != j {
                    let gain: f64 = (0..self.rows)
                        .map(|i| dist[i * self.cols + j] * (self.payoff(Two, i, k) - self.payoff(Two, i, j)))
                        .sum();
                    worst = worst.max(gain);
                }
            }
        }
        worst.max(0.0)
    }

    pub fn expected(&self, dist: &[f64]) -> (f64, f64) {
        let e1 = dist.iter().zip(&self.payoff1).map(|(p, u)| p * u).sum();
        let e2 = dist.iter().zip(&self.payoff2).map(|(p, u)| p * u).sum();
        (e1, e2)
    }
}

/// Correlated equilibrium maximizing the players' summed expected payoff.
/// Returns a row-major distribution over joint actions.
pub fn solve_ce_utilitarian(g: &BimatrixGame) -> Result<Vec<f64>> {
    use crate::Player::{One, Two};
    let (m, n) = (g.rows, g.cols);
    let idx = |i: usize, j: usize| i * n + j;
    let objective = (0..m * n).map(|k| g.payoff1[k] + g.payoff2[k]).collect();
    let scale = g.payoff1.iter().chain(&g.payoff2).fold(1.0f64, |a, x| a.max(x.abs()));
    // payoff differences below float noise count as ties
    let diff = |x: f64, y: f64| if (x - y).abs() <= 1e-12 * scale { 0.0 } else { x - y };
    let mut lp = LinearProgram::new(objective);
    lp.add(vec![1.0; m * n], Relation::Eq, 1.0);
    for i in 0..m {
        for k in (0..m).filter(|&k| k != i) {
            let mut row = vec![0.0; m * n];
            for j in 0..n {
                row[idx(i, j)] = diff(g.payoff(One, i, j), g.payoff(One, k, j));
            }
            lp.add(row, Relation::Ge, 0.0);
        }
    }
    for j in 0..n {
        for k in (0..n).filter(|&k| k != j) {
            let mut row = vec![0.0; m * n];
            for i in 0..m {
                row[idx(i, j)] = diff(g.payoff(Two, i, j), g.payoff(Two, i, k));
            }
            lp.add(row, Relation::Ge, 0.0);
        }
    }
    let mut dist = lp.maximize()?.x;
    MixedPolicy::clean(&mut dist);
    Ok(dist)
}
