//! Reference solutions for the egalitarian point, used to check the search.
//!
//! [`enumerate_hull`] evaluates every deterministic stationary joint policy
//! and takes the convex hull of the payoffs. [`occupancy_egalitarian`]
//! solves the same problem as one linear program over discounted
//! state-action occupancies, which scales to the grid games.

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::eval::evaluate_joint;
use crate::game::StochasticGame;
use crate::geometry::{egal_value, PayoffPoint};
use crate::lp::{LinearProgram, Relation};
use crate::policy::JointPolicy;

pub const DEFAULT_POLICY_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HullVertex {
    pub point: PayoffPoint,
    /// Enumeration index of a policy attaining the vertex.
    pub policy_id: u64,
}

/// Vertices in counter-clockwise order, starting from the lowest-left one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PayoffHull {
    pub vertices: Vec<HullVertex>,
    pub policies_enumerated: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleResult {
    pub hull: PayoffHull,
    pub point: PayoffPoint,
    pub egal_value: f64,
}

fn non_terminal(game: &StochasticGame) -> Vec<usize> {
    (0..game.num_states()).filter(|&s| !game.is_terminal(s)).collect()
}

/// Number of deterministic stationary joint policies.
pub fn policy_count(game: &StochasticGame) -> f64 {
    (game.num_joint() as f64).powi(non_terminal(game).len() as i32)
}

/// Decodes a policy id (mixed-radix digits over the non-terminal states).
pub fn policy_from_id(game: &StochasticGame, mut id: u64) -> JointPolicy {
    let nj = game.num_joint() as u64;
    let mut joint = vec![0usize; game.num_states()];
    for s in non_terminal(game) {
        joint[s] = (id % nj) as usize;
        id /= nj;
    }
    JointPolicy::from_joint_indices(game, &joint)
}

fn cross(o: PayoffPoint, a: PayoffPoint, b: PayoffPoint) -> f64 {
    (a.p1 - o.p1) * (b.p2 - o.p2) - (a.p2 - o.p2) * (b.p1 - o.p1)
}

/// Convex hull by the monotone chain; collinear points are dropped.
pub fn convex_hull(points: &[HullVertex]) -> Vec<HullVertex> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| {
        a.point.p1.total_cmp(&b.point.p1).then(a.point.p2.total_cmp(&b.point.p2))
    });
    pts.dedup_by(|a, b| a.point == b.point);
    if pts.len() < 3 {
        return pts;
    }
    let scale = pts.iter().map(|v| v.point.p1.abs().max(v.point.p2.abs())).fold(1.0, f64::max);
    let tol = 1e-12 * scale * scale;
    let mut lower: Vec<HullVertex> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross(lower[lower.len() - 2].point, lower[lower.len() - 1].point, p.point) <= tol
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<HullVertex> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(upper[upper.len() - 2].point, upper[upper.len() - 1].point, p.point) <= tol
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Best egalitarian point of a convex polygon: the optimum of a concave
/// piecewise-linear function lies at a vertex or where an edge crosses the
/// egalitarian line.
pub fn hull_egalitarian(vertices: &[PayoffPoint], v: PayoffPoint) -> Option<PayoffPoint> {
    let mut best: Option<PayoffPoint> = None;
    let mut consider = |x: PayoffPoint| {
        if best.is_none_or(|b| egal_value(x, v) > egal_value(b, v)) {
            best = Some(x);
        }
    };
    let n = vertices.len();
    for i in 0..n {
        let a = vertices[i];
        consider(a);
        let b = vertices[(i + 1) % n];
        let (da, db) = (a.advantage(v).imbalance(), b.advantage(v).imbalance());
        if (da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0) {
            let t = da / (da - db);
            consider(PayoffPoint::new(a.p1 + t * (b.p1 - a.p1), a.p2 + t * (b.p2 - a.p2)));
        }
    }
    best
}

/// Enumerates all deterministic joint policies (at most `cap` of them).
pub fn enumerate_hull(game: &StochasticGame, cap: u64, tol: f64) -> Result<PayoffHull> {
    let count = policy_count(game);
    if count > cap as f64 {
        return Err(GameError::CapExceeded { count, cap });
    }
    let count = count as u64;
    let mut points = Vec::with_capacity(count as usize);
    for id in 0..count {
        let point = evaluate_joint(game, &policy_from_id(game, id), tol)?;
        points.push(HullVertex { point, policy_id: id });
    }
    Ok(PayoffHull { vertices: convex_hull(&points), policies_enumerated: count })
}

/// Hull and egalitarian point relative to the disagreement point `v`.
pub fn enumerate_egalitarian(
    game: &StochasticGame,
    v: PayoffPoint,
    cap: u64,
    tol: f64,
) -> Result<OracleResult> {
    let hull = enumerate_hull(game, cap, tol)?;
    let pts: Vec<PayoffPoint> = hull.vertices.iter().map(|h| h.point).collect();
    let point = hull_egalitarian(&pts, v)
        .ok_or_else(|| GameError::Solver("empty payoff hull".into()))?;
    Ok(OracleResult { egal_value: egal_value(point, v), point, hull })
}

/// Maximizes `min(p1 - v1, p2 - v2)` over all discounted occupancy measures
/// from the start state. Returns the optimal payoff point.
pub fn occupancy_egalitarian(game: &StochasticGame, v: PayoffPoint) -> Result<PayoffPoint> {
    let states = non_terminal(game);
    if game.is_terminal(game.start()) {
        return Ok(PayoffPoint::new(0.0, 0.0));
    }
    let nj = game.num_joint();
    let mut local = vec![usize::MAX; game.num_states()];
    for (i, &s) in states.iter().enumerate() {
        local[s] = i;
    }
    // variables: x(s, j) for non-terminal s, then t+ and t-
    let nx = states.len() * nj;
    let nv = nx + 2;
    let mut objective = vec![0.0; nv];
    objective[nx] = 1.0;
    objective[nx + 1] = -1.0;
    let mut lp = LinearProgram::new(objective);
    let mut flow = vec![vec![0.0; nv]; states.len()];
    let (mut r1, mut r2) = (vec![0.0; nv], vec![0.0; nv]);
    for (i, &s) in states.iter().enumerate() {
        for j in 0..nj {
            let col = i * nj + j;
            flow[i][col] += 1.0;
            for &(t, p) in game.transitions(s, j) {
                if local[t] != usize::MAX {
                    flow[local[t]][col] -= game.gamma() * p;
                }
            }
            let (a, b) = game.rewards(s, j);
            r1[col] = a;
            r2[col] = b;
        }
    }
    for (i, row) in flow.into_iter().enumerate() {
        let rhs = if states[i] == game.start() { 1.0 } else { 0.0 };
        lp.add(row, Relation::Eq, rhs);
    }
    for (mut row, vi) in [(r1.clone(), v.p1), (r2.clone(), v.p2)] {
        row[nx] = -1.0;
        row[nx + 1] = 1.0;
        lp.add(row, Relation::Ge, vi);
    }
    let sol = lp.maximize()?;
    let dot = |r: &[f64]| r.iter().zip(&sol.x).map(|(a, b)| a * b).sum::<f64>();
    Ok(PayoffPoint::new(dot(&r1), dot(&r2)))
}
