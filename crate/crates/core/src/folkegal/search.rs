//! Binary search along the egalitarian line between two flanking hull points.

use serde::{Deserialize, Serialize};

use super::geometry::{apex, balance, intersect};
use crate::error::{GameError, Result};
use crate::game::StochasticGame;
use crate::geometry::{line_side, triangle_area, PayoffPoint, Side, DEFAULT_TOL};
use crate::solvers::{solve_mdp_w, WeightedSolution};

/// One step of the search: the flanks it started from, the balancing
/// weight, the point MDP(w) returned, and the area of the active triangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceIteration {
    pub left: PayoffPoint,
    pub right: PayoffPoint,
    pub weight: f64,
    pub point: Option<PayoffPoint>,
    pub area: f64,
    /// Side of the egalitarian line `point` fell on, if it replaced a flank.
    pub replaced: Option<Side>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchTrace {
    /// Area of the initial triangle.
    pub nu0: f64,
    /// Iteration budget the search ran under.
    pub bound: usize,
    pub iterations: Vec<TraceIteration>,
    /// Scalarized MDP solves, including the two endpoint solves.
    pub mdp_solves: usize,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub point: PayoffPoint,
    /// Weight on the left policy.
    pub lambda: f64,
    pub left: WeightedSolution,
    pub right: WeightedSolution,
    pub trace: SearchTrace,
}

/// Area of the triangle between the flanks and their supporting lines.
pub(crate) fn active_area(l: &WeightedSolution, r: &WeightedSolution) -> f64 {
    match apex(l.payoff, l.weight, r.payoff, r.weight) {
        Some(c) => triangle_area(l.payoff, r.payoff, c),
        None => 0.0,
    }
}

/// Searches between `l0` (weakly left of the egalitarian line through `v`)
/// and `r0` (weakly right) for at most `t` scalarized solves.
pub fn egal_search(
    game: &StochasticGame,
    l0: WeightedSolution,
    r0: WeightedSolution,
    t: usize,
    v: PayoffPoint,
    eps: f64,
) -> Result<SearchResult> {
    if line_side(l0.payoff, v, DEFAULT_TOL) == Side::Right
        || line_side(r0.payoff, v, DEFAULT_TOL) == Side::Left
    {
        return Err(GameError::SameSide);
    }
    let improvement_tol = eps / 4.0;
    let (mut l, mut r) = (l0, r0);
    let mut trace = SearchTrace { nu0: active_area(&l, &r), bound: t, ..Default::default() };
    while trace.iterations.len() < t {
        let w = balance(l.payoff, r.payoff);
        let area = active_area(&l, &r);
        let p = solve_mdp_w(game, w, improvement_tol)?;
        trace.mdp_solves += 1;
        let gain = p.payoff.sigma(w) - l.payoff.sigma(w);
        let mut step = TraceIteration {
            left: l.payoff,
            right: r.payoff,
            weight: w,
            point: Some(p.payoff),
            area,
            replaced: None,
        };
        log::debug!("search w={w:.6} P={} gain={gain:.3e} area={area:.3e}", p.payoff);
        if gain <= improvement_tol {
            trace.iterations.push(step);
            break;
        }
        if line_side(p.payoff, v, 0.0) == Side::Left {
            step.replaced = Some(Side::Left);
            l = p;
        } else {
            step.replaced = Some(Side::Right);
            r = p;
        }
        trace.iterations.push(step);
    }
    let (lambda, point) = intersect(l.payoff, r.payoff, v)?;
    Ok(SearchResult { point, lambda, left: l, right: r, trace })
}
