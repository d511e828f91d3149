use crate::error::{GridError, Result};

/// Largest supported `width * height`.
pub const MAX_CELLS: usize = 100;

pub const DEFAULT_STEP_COST: f64 = -1.0;
pub const DEFAULT_GOAL_REWARD: f64 = 100.0;
pub const DEFAULT_GAMMA: f64 = 0.95;

/// Cell coordinates, row 0 at the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub row: usize,
    pub col: usize,
}

impl Pos {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    fn adjacent(self, other: Pos) -> bool {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col) == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    A,
    B,
    Shared,
}

impl Owner {
    /// Whether a goal with this owner scores for player A (`true`) or B.
    pub fn scores_for(self, player_a: bool) -> bool {
        match self {
            Owner::Shared => true,
            Owner::A => player_a,
            Owner::B => !player_a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Goal {
    pub pos: Pos,
    pub owner: Owner,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub name: Option<String>,
    pub width: usize,
    pub height: usize,
    /// Row-major; `true` marks a wall.
    pub walls: Vec<bool>,
    /// Edges crossed with probability 1/2, each stored with the smaller
    /// position first, sorted.
    pub semi_walls: Vec<(Pos, Pos)>,
    pub start_a: Pos,
    pub start_b: Pos,
    /// Sorted by position.
    pub goals: Vec<Goal>,
    pub step_cost: f64,
    pub goal_reward: f64,
    pub gamma: f64,
    /// Whether the step that enters a goal also pays `step_cost`.
    pub charge_goal_step: bool,
}

impl GridSpec {
    /// An all-empty grid with default parameters and no goals.
    pub fn empty(width: usize, height: usize, start_a: Pos, start_b: Pos) -> Self {
        Self {
            name: None,
            width,
            height,
            walls: vec![false; width * height],
            semi_walls: Vec::new(),
            start_a,
            start_b,
            goals: Vec::new(),
            step_cost: DEFAULT_STEP_COST,
            goal_reward: DEFAULT_GOAL_REWARD,
            gamma: DEFAULT_GAMMA,
            charge_goal_step: false,
        }
    }

    pub fn in_bounds(&self, p: Pos) -> bool {
        p.row < self.height && p.col < self.width
    }

    pub fn is_wall(&self, p: Pos) -> bool {
        self.walls[p.row * self.width + p.col]
    }

    pub fn is_free(&self, p: Pos) -> bool {
        self.in_bounds(p) && !self.is_wall(p)
    }

    /// Non-wall cells in row-major order.
    pub fn free_cells(&self) -> Vec<Pos> {
        (0..self.height)
            .flat_map(|r| (0..self.width).map(move |c| Pos::new(r, c)))
            .filter(|&p| !self.is_wall(p))
            .collect()
    }

    pub fn goal_at(&self, p: Pos) -> Option<Owner> {
        self.goals.iter().find(|g| g.pos == p).map(|g| g.owner)
    }

    pub fn is_semi(&self, a: Pos, b: Pos) -> bool {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.semi_walls.binary_search(&key).is_ok()
    }

    /// Sorts goals and semi-walls into canonical order.
    pub fn normalize(&mut self) {
        for e in &mut self.semi_walls {
            if e.1 < e.0 {
                *e = (e.1, e.0);
            }
        }
        self.semi_walls.sort();
        self.semi_walls.dedup();
        self.goals.sort();
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(GridError::Invalid(m));
        if self.width == 0 || self.height == 0 {
            return bad("grid is empty".into());
        }
        if self.width * self.height > MAX_CELLS {
            return bad(format!("{}x{} grid exceeds {MAX_CELLS} cells", self.width, self.height));
        }
        if self.walls.len() != self.width * self.height {
            return bad("wall table does not match the grid size".into());
        }
        for (label, p) in [("A", self.start_a), ("B", self.start_b)] {
            if !self.is_free(p) {
                return bad(format!("start {label} at {p:?} is not an empty cell"));
            }
        }
        if self.start_a == self.start_b {
            return bad("starts coincide".into());
        }
        for g in &self.goals {
            if !self.is_free(g.pos) {
                return bad(format!("goal at {:?} is not an empty cell", g.pos));
            }
        }
        if self.goals.windows(2).any(|w| w[0].pos == w[1].pos) {
            return bad("two goals share a cell".into());
        }
        for p in [self.start_a, self.start_b] {
            if self.goal_at(p).is_some() {
                return bad(format!("a player starts on a goal at {p:?}"));
            }
        }
        for &(a, b) in &self.semi_walls {
            if !a.adjacent(b) || !self.in_bounds(a) || !self.in_bounds(b) {
                return bad(format!("semi-passable edge {a:?}-{b:?} is not between adjacent cells"));
            }
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return bad(format!("gamma {} outside [0, 1)", self.gamma));
        }
        if !self.step_cost.is_finite() || !self.goal_reward.is_finite() {
            return bad("rewards must be finite".into());
        }
        Ok(())
    }
}
