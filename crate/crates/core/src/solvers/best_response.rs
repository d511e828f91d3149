use crate::error::{GameError, Result};
use crate::game::{Player, StochasticGame};
use crate::mdp::Mdp;
use crate::policy::MixedPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// An exact best response to a fixed stationary opponent.
#[derive(Debug, Clone)]
pub struct BestResponse {
    pub responder: Player,
    /// Objective value from the start state, in the objective player's reward units.
    pub value: f64,
    pub state_values: Vec<f64>,
    pub policy: MixedPolicy,
}

/// Best response of `responder` when the other player follows `opponent`,
/// optimizing `objective`'s discounted reward in the given sense.
///
/// The opponent must be defined at every non-terminal state.
pub fn best_response(
    game: &StochasticGame,
    responder: Player,
    opponent: &MixedPolicy,
    objective: Player,
    sense: Sense,
    eps: f64,
) -> Result<BestResponse> {
    super::check_eps(eps)?;
    if opponent.player != responder.other() {
        return Err(GameError::InvalidPolicy("opponent policy belongs to the responder".into()));
    }
    let n = game.num_states();
    let na = game.num_actions(responder);
    let sign = match sense {
        Sense::Maximize => 1.0,
        Sense::Minimize => -1.0,
    };
    let mut trans = Vec::with_capacity(n);
    let mut reward = Vec::with_capacity(n);
    let terminal: Vec<bool> = (0..n).map(|s| game.is_terminal(s)).collect();
    for s in 0..n {
        if terminal[s] {
            trans.push(vec![vec![(s, 1.0)]; na]);
            reward.push(vec![0.0; na]);
            continue;
        }
        let od = opponent.at(s).ok_or(GameError::IncompletePolicy { state: s })?;
        let mut ts = Vec::with_capacity(na);
        let mut rs = Vec::with_capacity(na);
        for a in 0..na {
            let mut row: Vec<(usize, f64)> = Vec::new();
            let mut r = 0.0;
            for (b, &pb) in od.iter().enumerate() {
                if pb <= 0.0 {
                    continue;
                }
                let j = match responder {
                    Player::One => game.joint_index(a, b),
                    Player::Two => game.joint_index(b, a),
                };
                r += pb * game.reward(objective, s, j);
                for &(t, pt) in game.transitions(s, j) {
                    match row.iter_mut().find(|(k, _)| *k == t) {
                        Some(e) => e.1 += pb * pt,
                        None => row.push((t, pb * pt)),
                    }
                }
            }
            ts.push(row);
            rs.push(sign * r);
        }
        trans.push(ts);
        reward.push(rs);
    }
    let mdp = Mdp { gamma: game.gamma(), n_actions: na, terminal: terminal.clone(), trans, reward };
    let sol = mdp.solve(eps);
    let actions: Vec<Option<usize>> =
        (0..n).map(|s| (!terminal[s]).then_some(sol.policy[s])).collect();
    let state_values: Vec<f64> = sol.values.iter().map(|v| sign * v).collect();
    Ok(BestResponse {
        responder,
        value: state_values[game.start()],
        state_values,
        policy: MixedPolicy::deterministic(game, responder, &actions),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;

    #[test]
    fn responds_to_a_pure_opponent() {
        // one-shot: player 2 plays column 1; player 1's best row pays 3
        let mut b = GameBuilder::new(2, 2, 2, 0.9);
        b.terminal(1);
        let table = [[1.0, 0.0], [2.0, 3.0]];
        for a1 in 0..2 {
            for a2 in 0..2 {
                b.transition(0, a1, a2, 1, 1.0).reward(0, a1, a2, table[a1][a2], 0.0);
            }
        }
        let g = b.build().unwrap();
        let opp = MixedPolicy::deterministic(&g, Player::Two, &[Some(1), None]);
        let br = best_response(&g, Player::One, &opp, Player::One, Sense::Maximize, 1e-6).unwrap();
        assert!((br.value - 3.0).abs() < 1e-12);
        assert_eq!(br.policy.at(0).unwrap(), &[0.0, 1.0]);
        let worst = best_response(&g, Player::One, &opp, Player::One, Sense::Minimize, 1e-6).unwrap();
        assert!(worst.value.abs() < 1e-12);
    }
}
