//! The ASCII map format.
//!
//! ```text
//! // comments start with two slashes
//! version = 1
//! name = chicken
//! gamma = 0.95
//!
//! .$.
//! ...
//! : :
//! A.B
//! ```
//!
//! Header lines are `key = value` pairs before the grid: `version` (must be
//! 1), `name`, `step_cost`, `goal_reward`, `gamma`, `charge_goal_step`.
//! Grid cells are `#` wall, `.` empty, `A`/`B` starts, `1`/`2`/`$` goals
//! for player A, player B, or either. A `:` between two cells of a row
//! makes the edge between them semi-passable. A line of only spaces and
//! colons between two rows marks semi-passable edges between vertically
//! adjacent cells: a colon at character `k` refers to column `k`.

use crate::error::{GridError, Result};
use crate::spec::{Goal, GridSpec, Owner, Pos, DEFAULT_GAMMA, DEFAULT_GOAL_REWARD, DEFAULT_STEP_COST};

pub const FORMAT_VERSION: u32 = 1;

fn err(line: usize, column: usize, message: impl Into<String>) -> GridError {
    GridError::Parse { line, column, message: message.into() }
}

fn is_edge_line(text: &str) -> bool {
    text.contains(':') && text.chars().all(|c| c == ':' || c == ' ')
}

struct Row {
    line: usize,
    cells: Vec<(char, usize)>,
    /// Column `c` has a semi-passable edge to `c + 1`.
    semi_right: Vec<usize>,
}

fn parse_row(line: usize, text: &str) -> Result<Row> {
    let mut cells = Vec::new();
    let mut semi_right = Vec::new();
    let mut pending_colon: Option<usize> = None;
    for (i, ch) in text.chars().enumerate() {
        let column = i + 1;
        match ch {
            ':' => {
                if cells.is_empty() || pending_colon.is_some() {
                    return Err(err(line, column, "':' must sit between two cells"));
                }
                pending_colon = Some(column);
            }
            '#' | '.' | 'A' | 'B' | '1' | '2' | '$' => {
                if pending_colon.take().is_some() {
                    semi_right.push(cells.len() - 1);
                }
                cells.push((ch, column));
            }
            other => return Err(err(line, column, format!("unknown character {other:?}"))),
        }
    }
    if let Some(column) = pending_colon {
        return Err(err(line, column, "':' must sit between two cells"));
    }
    Ok(Row { line, cells, semi_right })
}

fn parse_bool(line: usize, column: usize, value: &str) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(err(line, column, format!("expected true or false, found {value:?}"))),
    }
}

fn parse_number(line: usize, column: usize, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| err(line, column, format!("expected a number, found {value:?}")))
}

pub fn parse_grid(text: &str) -> Result<GridSpec> {
    let mut name = None;
    let mut step_cost = DEFAULT_STEP_COST;
    let mut goal_reward = DEFAULT_GOAL_REWARD;
    let mut gamma = DEFAULT_GAMMA;
    let mut charge_goal_step = false;
    let mut rows: Vec<Row> = Vec::new();
    // (line, text, index of the row above)
    let mut edge_lines: Vec<(usize, String, usize)> = Vec::new();
    let mut grid_ended_at: Option<usize> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim_end();
        if content.trim_start().starts_with("//") {
            continue;
        }
        if content.is_empty() {
            if !rows.is_empty() && grid_ended_at.is_none() {
                grid_ended_at = Some(line);
            }
            continue;
        }
        if let Some(eq) = content.find('=') {
            if !rows.is_empty() {
                return Err(err(line, 1, "header line after the grid"));
            }
            let key = content[..eq].trim();
            let value = content[eq + 1..].trim();
            let column = eq + 2;
            match key {
                "version" => {
                    if value.parse::<u32>().ok() != Some(FORMAT_VERSION) {
                        return Err(err(line, column, format!("unsupported version {value:?}")));
                    }
                }
                "name" => name = Some(value.to_string()),
                "step_cost" => step_cost = parse_number(line, column, value)?,
                "goal_reward" => goal_reward = parse_number(line, column, value)?,
                "gamma" => gamma = parse_number(line, column, value)?,
                "charge_goal_step" => charge_goal_step = parse_bool(line, column, value)?,
                _ => return Err(err(line, 1, format!("unknown header key {key:?}"))),
            }
            continue;
        }
        if let Some(blank) = grid_ended_at {
            return Err(err(blank, 1, "blank line inside the grid"));
        }
        if is_edge_line(content) {
            if rows.is_empty() {
                return Err(err(line, 1, "edge line before the first row"));
            }
            edge_lines.push((line, content.to_string(), rows.len() - 1));
            continue;
        }
        rows.push(parse_row(line, content)?);
    }

    let first = rows.first().ok_or_else(|| err(text.lines().count().max(1), 1, "no grid rows"))?;
    let width = first.cells.len();
    let height = rows.len();
    for r in &rows {
        if r.cells.len() != width {
            let column = r.cells.last().map_or(1, |c| c.1);
            return Err(err(r.line, column, format!("row has {} cells, expected {width}", r.cells.len())));
        }
    }

    let mut walls = vec![false; width * height];
    let mut goals = Vec::new();
    let mut semi_walls = Vec::new();
    let (mut start_a, mut start_b) = (None, None);
    for (ri, r) in rows.iter().enumerate() {
        for (ci, &(ch, column)) in r.cells.iter().enumerate() {
            let p = Pos::new(ri, ci);
            match ch {
                '#' => walls[ri * width + ci] = true,
                'A' | 'B' => {
                    let slot = if ch == 'A' { &mut start_a } else { &mut start_b };
                    if slot.is_some() {
                        return Err(err(r.line, column, format!("second start {ch}")));
                    }
                    *slot = Some(p);
                }
                '1' => goals.push(Goal { pos: p, owner: Owner::A }),
                '2' => goals.push(Goal { pos: p, owner: Owner::B }),
                '$' => goals.push(Goal { pos: p, owner: Owner::Shared }),
                _ => {}
            }
        }
        for &c in &r.semi_right {
            semi_walls.push((p_of(ri, c), p_of(ri, c + 1)));
        }
    }
    for (line, content, above) in &edge_lines {
        if *above + 1 >= height {
            return Err(err(*line, 1, "edge line after the last row"));
        }
        for (k, ch) in content.chars().enumerate() {
            if ch == ':' {
                if k >= width {
                    return Err(err(*line, k + 1, "edge marker outside the grid"));
                }
                semi_walls.push((p_of(*above, k), p_of(above + 1, k)));
            }
        }
    }
    let last_line = rows.last().map_or(1, |r| r.line);
    let start_a = start_a.ok_or_else(|| err(last_line, 1, "missing start A"))?;
    let start_b = start_b.ok_or_else(|| err(last_line, 1, "missing start B"))?;

    let mut spec = GridSpec {
        name,
        width,
        height,
        walls,
        semi_walls,
        start_a,
        start_b,
        goals,
        step_cost,
        goal_reward,
        gamma,
        charge_goal_step,
    };
    spec.normalize();
    spec.validate()?;
    Ok(spec)
}

fn p_of(row: usize, col: usize) -> Pos {
    Pos::new(row, col)
}

fn cell_char(spec: &GridSpec, p: Pos) -> char {
    if spec.is_wall(p) {
        '#'
    } else if p == spec.start_a {
        'A'
    } else if p == spec.start_b {
        'B'
    } else {
        match spec.goal_at(p) {
            Some(Owner::A) => '1',
            Some(Owner::B) => '2',
            Some(Owner::Shared) => '$',
            None => '.',
        }
    }
}

/// Writes `spec` in the map format; [`parse_grid`] reads it back unchanged.
pub fn render(spec: &GridSpec) -> String {
    let mut out = format!("version = {FORMAT_VERSION}\n");
    if let Some(name) = &spec.name {
        out += &format!("name = {name}\n");
    }
    out += &format!("step_cost = {}\n", spec.step_cost);
    out += &format!("goal_reward = {}\n", spec.goal_reward);
    out += &format!("gamma = {}\n", spec.gamma);
    if spec.charge_goal_step {
        out += "charge_goal_step = true\n";
    }
    out.push('\n');
    for r in 0..spec.height {
        for c in 0..spec.width {
            if c > 0 && spec.is_semi(Pos::new(r, c - 1), Pos::new(r, c)) {
                out.push(':');
            }
            out.push(cell_char(spec, Pos::new(r, c)));
        }
        out.push('\n');
        if r + 1 < spec.height {
            let edges: String = (0..spec.width)
                .map(|c| if spec.is_semi(Pos::new(r, c), Pos::new(r + 1, c)) { ':' } else { ' ' })
                .collect();
            let edges = edges.trim_end();
            if !edges.is_empty() {
                out += edges;
                out.push('\n');
            }
        }
    }
    out
}
