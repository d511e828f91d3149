//! Dense two-phase primal simplex for the small linear programs in this crate.
//!
//! Pivoting is fully deterministic: Dantzig's rule with lowest-index ties,
//! falling back to Bland's rule after a run of degenerate pivots, and
//! lowest-basis-index ties in the ratio test.

use crate::error::{GameError, Result};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-10;
const DEGENERATE_RUN: usize = 50;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `maximize objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>) -> Self {
        Self { objective, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        debug_assert_eq!(coeffs.len(), self.num_vars());
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn maximize(&self) -> Result<LpSolution> {
        Tableau::new(self).solve(self)
    }
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    n_orig: usize,
    n_cols: usize,
    first_artificial: usize,
    pivots: usize,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.constraints.len();
        let n_slack = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let n_art = lp.constraints.iter().filter(|c| c.relation != Relation::Le).count()
            + lp.constraints.iter().filter(|c| c.relation == Relation::Le && c.rhs < 0.0).count();
        // worst case every row needs an artificial after sign normalization
        let n_art = n_art.max(m);
        let first_artificial = n + n_slack;
        let n_cols = first_artificial + n_art;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = n;
        let mut art = first_artificial;
        for c in &lp.constraints {
            let mut row = vec![0.0; n_cols + 1];
            let (sign, relation) = if c.rhs < 0.0 {
                let flipped = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (-1.0, flipped)
            } else {
                (1.0, c.relation)
            };
            // equilibrate so pivot tolerances mean the same on every row
            let norm = c.coeffs.iter().fold(0.0f64, |m, a| m.max(a.abs()));
            let sign = if norm > 0.0 { sign / norm } else { sign };
            for (j, &a) in c.coeffs.iter().enumerate() {
                row[j] = sign * a;
            }
            row[n_cols] = sign * c.rhs;
            match relation {
                Relation::Le => {
                    row[slack] = 1.0;
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -1.0;
                    slack += 1;
                    row[art] = 1.0;
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = 1.0;
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Self { rows, basis, n_orig: n, n_cols, first_artificial, pivots: 0 }
    }

    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.n_cols]
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        d.push(0.0);
        for (i, row) in self.rows.iter().enumerate() {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for (dj, &a) in d.iter_mut().zip(row) {
                    *dj -= cb * a;
                }
            }
        }
        d
    }

    fn pivot(&mut self, r: usize, e: usize, d: &mut [f64]) {
        let piv = self.rows[r][e];
        for a in self.rows[r].iter_mut() {
            *a /= piv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[e];
            if f != 0.0 {
                for (a, &p) in row.iter_mut().zip(&pivot_row) {
                    *a -= f * p;
                }
                row[e] = 0.0;
            }
        }
        let f = d[e];
        if f != 0.0 {
            for (a, &p) in d.iter_mut().zip(&pivot_row) {
                *a -= f * p;
            }
            d[e] = 0.0;
        }
        self.basis[r] = e;
        self.pivots += 1;
    }

    /// Runs simplex iterations on reduced-cost row `d` over columns `< limit`.
    fn optimize(&mut self, d: &mut [f64], limit: usize) -> Result<()> {
        let mut degenerate = 0usize;
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(GameError::Solver("pivot limit exceeded".into()));
            }
            let scale = d[..limit].iter().fold(1.0f64, |m, x| m.max(x.abs()));
            let tol = COST_TOL * scale;
            let entering = if degenerate >= DEGENERATE_RUN {
                (0..limit).find(|&j| d[j] > tol)
            } else {
                let mut best: Option<usize> = None;
                for j in 0..limit {
                    if d[j] > tol && best.is_none_or(|b| d[j] > d[b]) {
                        best = Some(j);
                    }
                }
                best
            };
            let Some(e) = entering else { return Ok(()) };
            // minimum ratio; among near-ties prefer the largest pivot, then
            // the lowest basis index
            let mut min_ratio = f64::INFINITY;
            for row in &self.rows {
                let a = row[e];
                if a > PIVOT_TOL {
                    min_ratio = min_ratio.min(row[self.n_cols].max(0.0) / a);
                }
            }
            let mut leave: Option<(usize, f64)> = None;
            if min_ratio.is_finite() {
                let slack = 1e-12 * min_ratio.max(1.0);
                for i in 0..self.rows.len() {
                    let a = self.rows[i][e];
                    if a <= PIVOT_TOL || self.rhs(i).max(0.0) / a > min_ratio + slack {
                        continue;
                    }
                    leave = match leave {
                        Some((bi, _)) => {
                            let b = self.rows[bi][e];
                            if a > b || a == b && self.basis[i] < self.basis[bi] {
                                Some((i, min_ratio))
                            } else {
                                leave
                            }
                        }
                        None => Some((i, min_ratio)),
                    };
                }
            }
            let Some((r, ratio)) = leave else {
                return Err(GameError::Solver("unbounded".into()));
            };
            if ratio <= 1e-14 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, e, d);
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> Result<LpSolution> {
        // phase 1: drive artificials to zero
        let has_artificial = self.basis.iter().any(|&b| b >= self.first_artificial);
        if has_artificial {
            let mut cost = vec![0.0; self.n_cols];
            for c in cost.iter_mut().skip(self.first_artificial) {
                *c = -1.0;
            }
            let mut d = self.reduced_costs(&cost);
            // artificials may leave the basis but never re-enter
            self.optimize(&mut d, self.first_artificial)?;
            let infeasibility: f64 = (0..self.rows.len())
                .filter(|&i| self.basis[i] >= self.first_artificial)
                .map(|i| self.rhs(i))
                .sum();
            let scale = self.rows.iter().fold(1.0f64, |m, r| m.max(r[self.n_cols].abs()));
            if infeasibility > 1e-9 * scale {
                return Err(GameError::Solver("infeasible".into()));
            }
            // pivot remaining artificials out, dropping redundant rows
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.first_artificial {
                    let col = (0..self.first_artificial).find(|&j| self.rows[i][j].abs() > 1e-9);
                    match col {
                        Some(j) => {
                            let mut dummy = vec![0.0; self.n_cols + 1];
                            self.pivot(i, j, &mut dummy);
                        }
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }
        // phase 2
        let mut cost = vec![0.0; self.n_cols];
        cost[..self.n_orig].copy_from_slice(&lp.objective);
        let mut d = self.reduced_costs(&cost);
        self.optimize(&mut d, self.first_artificial)?;
        let mut x = vec![0.0; self.n_orig];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_orig {
                x[b] = self.rhs(i).max(0.0);
            }
        }
        let objective = x.iter().zip(&lp.objective).map(|(a, c)| a * c).sum();
        Ok(LpSolution { x, objective, pivots: self.pivots })
    }
}
