//! Monte-Carlo play of an equilibrium profile over repeated rounds.
//!
//! Each round is one play of the stochastic game from the start state: a
//! step pays the stage rewards, samples the successor, and then continues
//! with probability gamma, so a round's expected total is the discounted
//! return. Rounds are cut at [`horizon_cap`] steps.
//!
//! Alternating profiles pick each round's path policy by greedy fractional
//! alternation: the policy whose running share is furthest below its target
//! share is played, with exact ties broken at random. Path policies are
//! deterministic, so any off-path action is seen at once and answered by
//! the threat against the deviator for the rest of the run.
//!
//! All randomness comes from one ChaCha8 stream seeded with `seed`. Per
//! round: one draw for an alternation tie, if any. Per step: player 1's
//! action, player 2's action, the successor state, then continuation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::folkegal::{EquilibriumProfile, ProfilePlay};
use crate::game::{Player, StochasticGame};
use crate::geometry::PayoffPoint;
use crate::policy::{JointPolicy, MixedPolicy};
use crate::solvers::{best_response, Sense};

/// Remaining discounted mass below which a round is truncated, relative to
/// the largest reward.
pub const TRUNCATION_MASS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "player")]
pub enum Deviator {
    None,
    /// Best-responds to the path in the first round, then to the threat.
    BestResponseOnce(Player),
    /// Plays uniformly at random throughout.
    Random(Player),
}

impl Deviator {
    pub fn player(&self) -> Option<Player> {
        match self {
            Deviator::None => None,
            Deviator::BestResponseOnce(p) | Deviator::Random(p) => Some(*p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimReport {
    pub rounds: u64,
    pub seed: u64,
    pub deviator: Deviator,
    /// Empirical mean round payoff.
    pub average: PayoffPoint,
    /// Standard error of `average`.
    pub std_error: PayoffPoint,
    /// What the profile pays when followed.
    pub target: PayoffPoint,
    pub left_rounds: u64,
    pub right_rounds: u64,
    /// Round in which a deviation was first observed.
    pub detected_round: Option<u64>,
    pub truncated_rounds: u64,
    pub horizon: usize,
}

/// Step cap for one round: the first `t` with `gamma^t / (1 - gamma)` below
/// [`TRUNCATION_MASS`].
pub fn horizon_cap(gamma: f64) -> usize {
    if gamma <= 0.0 {
        return 1;
    }
    let t = (TRUNCATION_MASS * (1.0 - gamma)).ln() / gamma.ln();
    t.ceil().max(1.0) as usize
}

fn sample(rng: &mut ChaCha8Rng, dist: &[f64]) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &p) in dist.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    dist.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

/// What each player does at a state in the current phase.
enum Behavior<'a> {
    Pure(&'a JointPolicy),
    Mixed(&'a MixedPolicy),
    Uniform,
}

impl Behavior<'_> {
    fn dist(&self, game: &StochasticGame, player: Player, s: usize) -> Result<Vec<f64>> {
        let n = game.num_actions(player);
        Ok(match self {
            Behavior::Pure(pi) => {
                let (a1, a2) = pi.get(s).ok_or(GameError::IncompletePolicy { state: s })?;
                let mut d = vec![0.0; n];
                d[if player == Player::One { a1 } else { a2 }] = 1.0;
                d
            }
            Behavior::Mixed(m) => m.at(s).ok_or(GameError::IncompletePolicy { state: s })?.to_vec(),
            Behavior::Uniform => vec![1.0 / n as f64; n],
        })
    }
}

struct Responses {
    path: [Option<MixedPolicy>; 2],
    threat: Option<MixedPolicy>,
}

/// Plays `rounds` rounds of `profile` on `game`.
pub fn simulate(
    game: &StochasticGame,
    profile: &EquilibriumProfile,
    rounds: u64,
    deviator: Deviator,
    seed: u64,
) -> Result<SimReport> {
    if rounds == 0 {
        return Err(GameError::InvalidArgument("at least one round is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let horizon = horizon_cap(game.gamma());
    let eps = profile.eps.max(1e-9) * 1e-3;

    // (left, right, lambda) for alternation; defensive play uses one "path"
    let (paths, lambda): ([Option<&JointPolicy>; 2], f64) = match &profile.play {
        ProfilePlay::Alternating { lambda, left_policy, right_policy, .. } => {
            ([Some(left_policy), Some(right_policy)], *lambda)
        }
        ProfilePlay::Defensive { .. } => ([None, None], 1.0),
    };

    let mut responses = Responses { path: [None, None], threat: None };
    if let Deviator::BestResponseOnce(dev) = deviator {
        let opp = dev.other();
        for k in 0..2 {
            let opp_policy = match (&profile.play, paths[k]) {
                (_, Some(pi)) => pi.component(game, opp),
                (ProfilePlay::Defensive { d1, d2, .. }, None) => {
                    if opp == Player::One { d1.clone() } else { d2.clone() }
                }
                _ => unreachable!(),
            };
            responses.path[k] =
                Some(best_response(game, dev, &opp_policy, dev, Sense::Maximize, eps)?.policy);
        }
        if let Some(threat) = profile.threat_against(dev) {
            responses.threat = Some(best_response(game, dev, threat, dev, Sense::Maximize, eps)?.policy);
        }
    }

    let dev_player = deviator.player();
    let mut punishing = false;
    let mut detected_round = None;
    let (mut left_rounds, mut right_rounds, mut truncated) = (0u64, 0u64, 0u64);
    let (mut sum, mut sum_sq) = ([0.0f64; 2], [0.0f64; 2]);

    for round in 0..rounds {
        let k = if matches!(profile.play, ProfilePlay::Defensive { .. }) {
            0
        } else {
            let played = (left_rounds + right_rounds) as f64;
            let gap_l = lambda * (played + 1.0) - left_rounds as f64;
            let gap_r = (1.0 - lambda) * (played + 1.0) - right_rounds as f64;
            if gap_l > gap_r {
                0
            } else if gap_r > gap_l {
                1
            } else if rng.gen::<bool>() {
                0
            } else {
                1
            }
        };
        if k == 0 {
            left_rounds += 1;
        } else {
            right_rounds += 1;
        }

        let mut total = [0.0f64; 2];
        let mut s = game.start();
        let mut steps = 0usize;
        while !game.is_terminal(s) {
            if steps == horizon {
                truncated += 1;
                break;
            }
            let mut acts = [0usize; 2];
            for p in Player::both() {
                let behavior = if punishing && Some(p) != dev_player {
                    Behavior::Mixed(profile.threat_against(dev_player.unwrap()).unwrap())
                } else if Some(p) == dev_player {
                    match deviator {
                        Deviator::Random(_) => Behavior::Uniform,
                        Deviator::BestResponseOnce(_) => match (punishing, round) {
                            (true, _) => Behavior::Mixed(responses.threat.as_ref().unwrap()),
                            (false, 0) => Behavior::Mixed(responses.path[k].as_ref().unwrap()),
                            (false, _) => path_behavior(&profile.play, paths[k], p),
                        },
                        Deviator::None => unreachable!(),
                    }
                } else {
                    path_behavior(&profile.play, paths[k], p)
                };
                acts[p.index()] = sample(&mut rng, &behavior.dist(game, p, s)?);
            }
            // grim trigger: only deterministic path play is monitored
            if let (Some(dev), false, Some(pi)) = (dev_player, punishing, paths[k]) {
                let (e1, e2) = pi.get(s).ok_or(GameError::IncompletePolicy { state: s })?;
                let expected = if dev == Player::One { e1 } else { e2 };
                if acts[dev.index()] != expected {
                    punishing = profile.threat_against(dev).is_some();
                    detected_round.get_or_insert(round);
                }
            }
            let j = game.joint_index(acts[0], acts[1]);
            let (r1, r2) = game.rewards(s, j);
            total[0] += r1;
            total[1] += r2;
            let succ = game.transitions(s, j);
            let probs: Vec<f64> = succ.iter().map(|&(_, p)| p).collect();
            s = succ[sample(&mut rng, &probs)].0;
            steps += 1;
            if rng.gen::<f64>() >= game.gamma() {
                break;
            }
        }
        for i in 0..2 {
            sum[i] += total[i];
            sum_sq[i] += total[i] * total[i];
        }
    }

    let n = rounds as f64;
    let mean = [sum[0] / n, sum[1] / n];
    let se = |i: usize| {
        if rounds < 2 {
            0.0
        } else {
            let var = (sum_sq[i] - n * mean[i] * mean[i]).max(0.0) / (n - 1.0);
            (var / n).sqrt()
        }
    };
    Ok(SimReport {
        rounds,
        seed,
        deviator,
        average: PayoffPoint::new(mean[0], mean[1]),
        std_error: PayoffPoint::new(se(0), se(1)),
        target: profile.payoff(),
        left_rounds,
        right_rounds,
        detected_round,
        truncated_rounds: truncated,
        horizon,
    })
}

fn path_behavior<'a>(play: &'a ProfilePlay, path: Option<&'a JointPolicy>, p: Player) -> Behavior<'a> {
    match (path, play) {
        (Some(pi), _) => Behavior::Pure(pi),
        (None, ProfilePlay::Defensive { d1, d2, .. }) => {
            Behavior::Mixed(if p == Player::One { d1 } else { d2 })
        }
        (None, ProfilePlay::Alternating { .. }) => unreachable!("alternating profiles have paths"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horizon_matches_mass_bound() {
        let t = horizon_cap(0.95);
        assert!(0.95f64.powi(t as i32) / 0.05 < TRUNCATION_MASS);
        assert!(0.95f64.powi(t as i32 - 1) / 0.05 >= TRUNCATION_MASS);
        assert_eq!(horizon_cap(0.0), 1);
    }
}
