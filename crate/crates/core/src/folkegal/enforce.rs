use serde::{Deserialize, Serialize};

use super::EquilibriumProfile;
use crate::error::Result;
use crate::game::{Player, StochasticGame};
use crate::solvers::{best_response, Sense};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerMargin {
    pub player: Player,
    /// What the profile pays this player per round.
    pub payoff: f64,
    pub security: f64,
    /// `payoff - security`.
    pub margin: f64,
    /// Best the player can do against the threat aimed at it.
    pub threat_cap: Option<f64>,
    /// `security + eps - threat_cap`; negative means the threat is too weak.
    pub threat_margin: Option<f64>,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnforceabilityReport {
    pub eps: f64,
    pub players: Vec<PlayerMargin>,
    pub passed: bool,
}

impl EnforceabilityReport {
    pub fn flagged(&self) -> Vec<Player> {
        self.players.iter().filter(|m| m.flagged).map(|m| m.player).collect()
    }
}

/// Checks that each player is paid at least its security value (within
/// `eps`) and, for alternating profiles, that the threat aimed at each
/// player holds any deviation to at most its security value plus `eps`.
pub fn check_enforceable(
    game: &StochasticGame,
    profile: &EquilibriumProfile,
    eps: f64,
) -> Result<EnforceabilityReport> {
    let payoff = profile.payoff();
    let mut players = Vec::with_capacity(2);
    for p in Player::both() {
        let security = profile.disagreement.get(p);
        let mut margin = PlayerMargin {
            player: p,
            payoff: payoff.get(p),
            security,
            margin: payoff.get(p) - security,
            threat_cap: None,
            threat_margin: None,
            flagged: false,
        };
        let mut ok = margin.margin >= -eps;
        if let Some(threat) = profile.threat_against(p) {
            let cap = best_response(game, p, threat, p, Sense::Maximize, eps * 1e-3)?.value;
            let tm = security + eps - cap;
            margin.threat_cap = Some(cap);
            margin.threat_margin = Some(tm);
            ok &= tm >= 0.0;
        }
        margin.flagged = !ok;
        players.push(margin);
    }
    let passed = players.iter().all(|m| !m.flagged);
    Ok(EnforceabilityReport { eps, players, passed })
}
