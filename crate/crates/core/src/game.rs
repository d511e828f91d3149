//! Finite two-player stochastic games.

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};

/// Tolerance on transition-distribution sums.
pub const PROB_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn both() -> [Player; 2] {
        [Player::One, Player::Two]
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Player::One => write!(f, "player 1"),
            Player::Two => write!(f, "player 2"),
        }
    }
}

/// A finite two-player stochastic game with discount (continuation
/// probability) `gamma`.
///
/// Joint actions are indexed `a1 * n2 + a2`, which is also the lexicographic
/// order used for tie-breaking everywhere in the crate. Terminal states are
/// absorbing and pay nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticGame {
    state_names: Vec<String>,
    start: usize,
    actions1: Vec<String>,
    actions2: Vec<String>,
    // [state][joint] -> sparse successor distribution, sorted by state
    transitions: Vec<Vec<Vec<(usize, f64)>>>,
    rewards1: Vec<Vec<f64>>,
    rewards2: Vec<Vec<f64>>,
    gamma: f64,
    terminal: Vec<bool>,
    u_max: f64,
}

impl StochasticGame {
    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Largest reward magnitude over both tables.
    pub fn u_max(&self) -> f64 {
        self.u_max
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.state_names[s]
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn actions(&self, player: Player) -> &[String] {
        match player {
            Player::One => &self.actions1,
            Player::Two => &self.actions2,
        }
    }

    pub fn num_actions(&self, player: Player) -> usize {
        self.actions(player).len()
    }

    pub fn num_joint(&self) -> usize {
        self.actions1.len() * self.actions2.len()
    }

    pub fn joint_index(&self, a1: usize, a2: usize) -> usize {
        a1 * self.actions2.len() + a2
    }

    pub fn split_joint(&self, joint: usize) -> (usize, usize) {
        (joint / self.actions2.len(), joint % self.actions2.len())
    }

    pub fn is_terminal(&self, s: usize) -> bool {
        self.terminal[s]
    }

    pub fn terminals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&s| self.terminal[s])
    }

    pub fn transitions(&self, s: usize, joint: usize) -> &[(usize, f64)] {
        &self.transitions[s][joint]
    }

    pub fn reward(&self, player: Player, s: usize, joint: usize) -> f64 {
        match player {
            Player::One => self.rewards1[s][joint],
            Player::Two => self.rewards2[s][joint],
        }
    }

    pub fn rewards(&self, s: usize, joint: usize) -> (f64, f64) {
        (self.rewards1[s][joint], self.rewards2[s][joint])
    }

    /// Bound on any discounted return, `u_max / (1 - gamma)`.
    pub fn return_bound(&self) -> f64 {
        self.u_max / (1.0 - self.gamma)
    }

    /// The same game with the reward tables swapped; handy for solving
    /// zero-sum problems from player 2's point of view.
    pub fn with_rewards(&self, rewards1: Vec<Vec<f64>>, rewards2: Vec<Vec<f64>>) -> Result<Self> {
        let mut g = self.clone();
        g.rewards1 = rewards1;
        g.rewards2 = rewards2;
        g.u_max = max_abs(&g.rewards1, &g.rewards2);
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_states();
        if n == 0 {
            return Err(GameError::InvalidGame("no states".into()));
        }
        if self.actions1.is_empty() || self.actions2.is_empty() {
            return Err(GameError::InvalidGame("empty action set".into()));
        }
        if self.start >= n {
            return Err(GameError::InvalidGame(format!("start state {} out of range", self.start)));
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(GameError::InvalidGame(format!("gamma {} not in [0, 1)", self.gamma)));
        }
        for s in 0..n {
            for j in 0..self.num_joint() {
                let (r1, r2) = self.rewards(s, j);
                if !r1.is_finite() || !r2.is_finite() {
                    return Err(GameError::InvalidGame(format!("non-finite reward at state {s}")));
                }
                if self.terminal[s] {
                    if r1 != 0.0 || r2 != 0.0 {
                        return Err(GameError::InvalidGame(format!(
                            "terminal state {s} has a non-zero reward"
                        )));
                    }
                    if self.transitions[s][j] != [(s, 1.0)] {
                        return Err(GameError::InvalidGame(format!(
                            "terminal state {s} must self-loop"
                        )));
                    }
                    continue;
                }
                let row = &self.transitions[s][j];
                let mut total = 0.0;
                for &(next, p) in row {
                    if next >= n || !(0.0..=1.0 + PROB_TOL).contains(&p) {
                        return Err(GameError::InvalidGame(format!(
                            "bad transition entry at state {s}, joint action {j}"
                        )));
                    }
                    total += p;
                }
                if (total - 1.0).abs() > PROB_TOL {
                    let (a1, a2) = self.split_joint(j);
                    return Err(GameError::InvalidGame(format!(
                        "transition from state {s} under ({a1}, {a2}) sums to {total}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn max_abs(r1: &[Vec<f64>], r2: &[Vec<f64>]) -> f64 {
    r1.iter()
        .chain(r2.iter())
        .flat_map(|row| row.iter())
        .fold(0.0f64, |m, r| m.max(r.abs()))
}

/// Incremental constructor for [`StochasticGame`].
#[derive(Debug, Clone)]
pub struct GameBuilder {
    state_names: Vec<String>,
    actions1: Vec<String>,
    actions2: Vec<String>,
    gamma: f64,
    start: usize,
    terminal: Vec<bool>,
    transitions: Vec<Vec<Vec<(usize, f64)>>>,
    rewards1: Vec<Vec<f64>>,
    rewards2: Vec<Vec<f64>>,
}

impl GameBuilder {
    pub fn new(num_states: usize, num_actions1: usize, num_actions2: usize, gamma: f64) -> Self {
        let names = (0..num_states).map(|s| format!("s{s}")).collect();
        let a1 = (0..num_actions1).map(|a| format!("a{a}")).collect();
        let a2 = (0..num_actions2).map(|a| format!("b{a}")).collect();
        Self::with_names(names, a1, a2, gamma)
    }

    pub fn with_names(
        state_names: Vec<String>,
        actions1: Vec<String>,
        actions2: Vec<String>,
        gamma: f64,
    ) -> Self {
        let n = state_names.len();
        let joint = actions1.len() * actions2.len();
        Self {
            state_names,
            actions1,
            actions2,
            gamma,
            start: 0,
            terminal: vec![false; n],
            transitions: vec![vec![Vec::new(); joint]; n],
            rewards1: vec![vec![0.0; joint]; n],
            rewards2: vec![vec![0.0; joint]; n],
        }
    }

    pub fn start(mut self, s: usize) -> Self {
        self.start = s;
        self
    }

    pub fn set_start(&mut self, s: usize) -> &mut Self {
        self.start = s;
        self
    }

    /// Marks `s` absorbing; its transitions and rewards are filled in by `build`.
    pub fn terminal(&mut self, s: usize) -> &mut Self {
        if let Some(t) = self.terminal.get_mut(s) {
            *t = true;
        }
        self
    }

    /// Adds probability mass; repeated entries for the same successor accumulate.
    pub fn transition(&mut self, s: usize, a1: usize, a2: usize, next: usize, prob: f64) -> &mut Self {
        let j = a1 * self.actions2.len() + a2;
        if let Some(row) = self.transitions.get_mut(s).and_then(|r| r.get_mut(j)) {
            match row.iter_mut().find(|(t, _)| *t == next) {
                Some(entry) => entry.1 += prob,
                None => row.push((next, prob)),
            }
        }
        self
    }

    pub fn reward(&mut self, s: usize, a1: usize, a2: usize, r1: f64, r2: f64) -> &mut Self {
        let j = a1 * self.actions2.len() + a2;
        if let Some(x) = self.rewards1.get_mut(s).and_then(|r| r.get_mut(j)) {
            *x = r1;
        }
        if let Some(x) = self.rewards2.get_mut(s).and_then(|r| r.get_mut(j)) {
            *x = r2;
        }
        self
    }

    pub fn build(mut self) -> Result<StochasticGame> {
        let n = self.state_names.len();
        if self.actions1.is_empty() || self.actions2.is_empty() {
            return Err(GameError::InvalidGame("empty action set".into()));
        }
        for s in 0..n {
            if self.terminal[s] {
                for j in 0..self.transitions[s].len() {
                    if !self.transitions[s][j].is_empty() && self.transitions[s][j] != [(s, 1.0)] {
                        return Err(GameError::InvalidGame(format!(
                            "terminal state {s} has outgoing transitions"
                        )));
                    }
                    self.transitions[s][j] = vec![(s, 1.0)];
                }
                self.rewards1[s].iter_mut().for_each(|r| *r = 0.0);
                self.rewards2[s].iter_mut().for_each(|r| *r = 0.0);
            } else {
                for row in &mut self.transitions[s] {
                    row.retain(|&(_, p)| p != 0.0);
                    row.sort_by_key(|&(t, _)| t);
                }
            }
        }
        let u_max = max_abs(&self.rewards1, &self.rewards2);
        let game = StochasticGame {
            state_names: self.state_names,
            start: self.start,
            actions1: self.actions1,
            actions2: self.actions2,
            transitions: self.transitions,
            rewards1: self.rewards1,
            rewards2: self.rewards2,
            gamma: self.gamma,
            terminal: self.terminal,
            u_max,
        };
        game.validate()?;
        Ok(game)
    }
}

/// Serialized form of a [`StochasticGame`]; see `docs/formats.md`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub format: String,
    pub states: Vec<String>,
    pub start: usize,
    pub actions1: Vec<String>,
    pub actions2: Vec<String>,
    pub gamma: f64,
    #[serde(default)]
    pub terminals: Vec<usize>,
    pub transitions: Vec<TransitionEntry>,
    #[serde(default)]
    pub rewards: Vec<RewardEntry>,
}

pub const GAME_FORMAT: &str = "folkegal-game/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionEntry {
    pub state: usize,
    pub a1: usize,
    pub a2: usize,
    pub next: usize,
    pub prob: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RewardEntry {
    pub state: usize,
    pub a1: usize,
    pub a2: usize,
    pub r1: f64,
    pub r2: f64,
}

impl StochasticGame {
    pub fn to_document(&self) -> GameDocument {
        let mut transitions = Vec::new();
        let mut rewards = Vec::new();
        for s in 0..self.num_states() {
            if self.terminal[s] {
                continue;
            }
            for j in 0..self.num_joint() {
                let (a1, a2) = self.split_joint(j);
                for &(next, prob) in &self.transitions[s][j] {
                    transitions.push(TransitionEntry { state: s, a1, a2, next, prob });
                }
                let (r1, r2) = self.rewards(s, j);
                if r1 != 0.0 || r2 != 0.0 {
                    rewards.push(RewardEntry { state: s, a1, a2, r1, r2 });
                }
            }
        }
        GameDocument {
            format: GAME_FORMAT.to_string(),
            states: self.state_names.clone(),
            start: self.start,
            actions1: self.actions1.clone(),
            actions2: self.actions2.clone(),
            gamma: self.gamma,
            terminals: self.terminals().collect(),
            transitions,
            rewards,
        }
    }

    pub fn from_document(doc: &GameDocument) -> Result<Self> {
        if doc.format != GAME_FORMAT {
            return Err(GameError::InvalidGame(format!(
                "unsupported format {:?}, expected {GAME_FORMAT:?}",
                doc.format
            )));
        }
        let n = doc.states.len();
        let (n1, n2) = (doc.actions1.len(), doc.actions2.len());
        let mut b = GameBuilder::with_names(
            doc.states.clone(),
            doc.actions1.clone(),
            doc.actions2.clone(),
            doc.gamma,
        );
        b.set_start(doc.start);
        for &t in &doc.terminals {
            if t >= n {
                return Err(GameError::InvalidGame(format!("terminal {t} out of range")));
            }
            b.terminal(t);
        }
        let check = |s: usize, a1: usize, a2: usize| -> Result<()> {
            if s >= n || a1 >= n1 || a2 >= n2 {
                return Err(GameError::InvalidGame(format!(
                    "entry ({s}, {a1}, {a2}) out of range"
                )));
            }
            Ok(())
        };
        for t in &doc.transitions {
            check(t.state, t.a1, t.a2)?;
            if t.next >= n {
                return Err(GameError::InvalidGame(format!("successor {} out of range", t.next)));
            }
            b.transition(t.state, t.a1, t.a2, t.next, t.prob);
        }
        for r in &doc.rewards {
            check(r.state, r.a1, r.a2)?;
            b.reward(r.state, r.a1, r.a2, r.r1, r.r2);
        }
        b.build()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("game document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GameDocument =
            serde_json::from_str(text).map_err(|e| GameError::InvalidGame(e.to_string()))?;
        Self::from_document(&doc)
    }
}
