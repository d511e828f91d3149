//! Grid dynamics as a stochastic game.
//!
//! Each step both players pick one of N, S, E, W, stand. A move off the
//! grid or into a wall leaves the player in place; a move across a
//! semi-passable edge succeeds with probability 1/2. Among the players
//! whose moves survive that, two heading for the same cell are resolved
//! by a fair coin (unless the cell is a goal for both, in which case both
//! enter), two trying to swap cells both stay, and a player may step into
//! the other's cell only if that player leaves it. Every move costs
//! `step_cost`, blocked or not; standing is free. Entering one of its own
//! goals pays a player `goal_reward` and ends the game; the entering step
//! is not also charged unless `charge_goal_step` is set.

use folkegal_core::{GameBuilder, StochasticGame};

use crate::error::Result;
use crate::spec::{GridSpec, Pos};

pub const ACTIONS: [&str; 5] = ["N", "S", "E", "W", "stand"];
pub const STAND: usize = 4;
pub const TERMINAL_NAME: &str = "end";

fn step(spec: &GridSpec, p: Pos, action: usize) -> Option<Pos> {
    let (r, c) = (p.row as isize, p.col as isize);
    let (r, c) = match action {
        0 => (r - 1, c),
        1 => (r + 1, c),
        2 => (r, c + 1),
        3 => (r, c - 1),
        _ => return None,
    };
    if r < 0 || c < 0 {
        return None;
    }
    let q = Pos::new(r as usize, c as usize);
    spec.is_free(q).then_some(q)
}

/// Outcome of one step from positions `(a, b)`: probability and new positions.
fn outcomes(spec: &GridSpec, a: Pos, b: Pos, xa: usize, xb: usize) -> Vec<(f64, Pos, Pos)> {
    // intended targets, each surviving its semi-wall with probability 1/2
    let tries = |p: Pos, x: usize| -> Vec<(f64, Pos)> {
        match step(spec, p, x) {
            Some(q) if spec.is_semi(p, q) => vec![(0.5, q), (0.5, p)],
            Some(q) => vec![(1.0, q)],
            None => vec![(1.0, p)],
        }
    };
    let mut out = Vec::new();
    for (pa, ta) in tries(a, xa) {
        for (pb, tb) in tries(b, xb) {
            let pr = pa * pb;
            let (ma, mb) = (ta != a, tb != b);
            if ma && mb && ta == tb {
                let both_score = spec.goal_at(ta).is_some_and(|o| o.scores_for(true) && o.scores_for(false));
                if both_score {
                    out.push((pr, ta, tb));
                } else {
                    out.push((pr / 2.0, ta, b));
                    out.push((pr / 2.0, a, tb));
                }
            } else if ma && mb && ta == b && tb == a {
                out.push((pr, a, b));
            } else {
                let na = if ta == b && !mb { a } else { ta };
                let nb = if tb == a && !ma { b } else { tb };
                out.push((pr, na, nb));
            }
        }
    }
    out
}

/// Compiles a validated grid. States are ordered pairs of distinct free
/// cells (A's cell major, row-major order), followed by one terminal state.
pub fn compile_grid(spec: &GridSpec) -> Result<StochasticGame> {
    spec.validate()?;
    let cells = spec.free_cells();
    let index_of = |p: Pos| cells.iter().position(|&c| c == p).expect("free cell");
    let nc = cells.len();
    let mut pairs = Vec::with_capacity(nc * (nc - 1));
    let mut state_of = vec![usize::MAX; nc * nc];
    for (i, &pa) in cells.iter().enumerate() {
        for (j, &pb) in cells.iter().enumerate() {
            if i != j {
                state_of[i * nc + j] = pairs.len();
                pairs.push((pa, pb));
            }
        }
    }
    let terminal = pairs.len();
    let mut names: Vec<String> = pairs
        .iter()
        .map(|(a, b)| format!("A{},{} B{},{}", a.row, a.col, b.row, b.col))
        .collect();
    names.push(TERMINAL_NAME.to_string());
    let actions: Vec<String> = ACTIONS.iter().map(|s| s.to_string()).collect();
    let mut builder =
        GameBuilder::with_names(names, actions.clone(), actions, spec.gamma).start(state_of[index_of(spec.start_a) * nc + index_of(spec.start_b)]);
    builder.terminal(terminal);

    let reward_for = |moved: bool, scored: bool| -> f64 {
        let cost = if moved && !(scored && !spec.charge_goal_step) { spec.step_cost } else { 0.0 };
        cost + if scored { spec.goal_reward } else { 0.0 }
    };
    for (s, &(a, b)) in pairs.iter().enumerate() {
        for xa in 0..ACTIONS.len() {
            for xb in 0..ACTIONS.len() {
                let (mut r1, mut r2) = (0.0, 0.0);
                for (pr, na, nb) in outcomes(spec, a, b, xa, xb) {
                    let sa = na != a && spec.goal_at(na).is_some_and(|o| o.scores_for(true));
                    let sb = nb != b && spec.goal_at(nb).is_some_and(|o| o.scores_for(false));
                    r1 += pr * reward_for(xa != STAND, sa);
                    r2 += pr * reward_for(xb != STAND, sb);
                    let next = if sa || sb {
                        terminal
                    } else {
                        state_of[index_of(na) * nc + index_of(nb)]
                    };
                    builder.transition(s, xa, xb, next, pr);
                }
                builder.reward(s, xa, xb, r1, r2);
            }
        }
    }
    Ok(builder.build()?)
}
