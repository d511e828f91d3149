use std::fmt::Write;

use serde::Serialize;

use crate::config::Format;
use crate::error::Result;
use crate::report::*;

pub trait Render: Serialize {
    fn table(&self) -> String;
    fn csv(&self) -> String;

    fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Table => self.table(),
            Format::Csv => self.csv(),
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
        })
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

impl Render for SolveReport {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "game          {}", self.game);
        let _ = writeln!(s, "solver        {} (eps {})", self.solver.name(), self.eps);
        let _ = writeln!(s, "payoff        {:.2} {:.2}", self.payoff.p1, self.payoff.p2);
        let _ = writeln!(s, "disagreement  {:.2} {:.2}", self.disagreement.p1, self.disagreement.p2);
        let _ = writeln!(s, "egal value    {:.3}", self.egal_value);
        if let Some(mode) = self.mode {
            let _ = writeln!(s, "mode          {mode:?}");
        }
        if let Some(l) = self.lambda {
            let _ = writeln!(s, "lambda        {l:.4}");
        }
        if let Some(sw) = self.sweeps {
            let conv = if self.converged { "converged" } else { "not converged" };
            let _ = writeln!(s, "sweeps        {sw} ({conv})");
        }
        if let Some(e) = &self.enforceability {
            for m in &e.players {
                let threat = m.threat_cap.map_or_else(|| "-".to_string(), |c| format!("{c:.2}"));
                let _ = writeln!(
                    s,
                    "player {}      margin {:+.3}  threat cap {}{}",
                    m.player,
                    m.margin,
                    threat,
                    if m.flagged { "  FLAGGED" } else { "" }
                );
            }
        }
        if let Some(t) = &self.trace {
            let _ = writeln!(
                s,
                "search        {} iterations (bound {}), {} MDP solves, nu0 {:.3e}",
                t.iterations, t.bound, t.mdp_solves, t.nu0
            );
        }
        s
    }

    fn csv(&self) -> String {
        format!(
            "game,solver,eps,p1,p2,v1,v2,egal_value,mode,lambda,converged\n{},{},{},{},{},{},{},{},{},{},{}\n",
            self.game,
            self.solver.name(),
            self.eps,
            self.payoff.p1,
            self.payoff.p2,
            self.disagreement.p1,
            self.disagreement.p2,
            self.egal_value,
            opt(self.mode.map(|m| format!("{m:?}").to_lowercase())),
            opt(self.lambda),
            self.converged
        )
    }
}

impl Render for OracleReport {
    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "game          {}", self.game);
        let _ = writeln!(s, "method        {:?}", self.method);
        if let Some(n) = self.policies_enumerated {
            let _ = writeln!(s, "policies      {n}");
        }
        if let Some(vs) = &self.vertices {
            let _ = writeln!(s, "hull          {} vertices", vs.len());
            for v in vs {
                let _ = writeln!(s, "  {:>10.3} {:>10.3}  policy {}", v.point.p1, v.point.p2, v.policy_id);
            }
        }
        let _ = writeln!(s, "disagreement  {:.3} {:.3}", self.disagreement.p1, self.disagreement.p2);
        let _ = writeln!(s, "oracle point  {:.3} {:.3}  egal {:.4}", self.point.p1, self.point.p2, self.egal_value);
        let _ = writeln!(
            s,
            "folkegal      {:.3} {:.3}  egal {:.4}  {}",
            self.folkegal_payoff.p1,
            self.folkegal_payoff.p2,
            self.folkegal_egal_value,
            if self.agrees { "agrees" } else { "DISAGREES" }
        );
        s
    }

    fn csv(&self) -> String {
        format!(
            "game,method,p1,p2,egal_value,folkegal_egal_value,agrees\n{},{},{},{},{},{},{}\n",
            self.game,
            format!("{:?}", self.method).to_lowercase(),
            self.point.p1,
            self.point.p2,
            self.egal_value,
            self.folkegal_egal_value,
            self.agrees
        )
    }
}

impl Render for SimulateReport {
    fn table(&self) -> String {
        let r = &self.simulation;
        let mut s = String::new();
        let _ = writeln!(s, "game          {}", self.game);
        let _ = writeln!(s, "mode          {:?}", self.mode);
        let _ = writeln!(s, "rounds        {} (seed {}, horizon {})", r.rounds, r.seed, r.horizon);
        let _ = writeln!(s, "deviator      {:?}", r.deviator);
        let _ = writeln!(
            s,
            "average       {:.3} {:.3}  (se {:.3} {:.3})",
            r.average.p1, r.average.p2, r.std_error.p1, r.std_error.p2
        );
        let _ = writeln!(s, "target        {:.3} {:.3}", r.target.p1, r.target.p2);
        let _ = writeln!(s, "left/right    {}/{}", r.left_rounds, r.right_rounds);
        if let Some(d) = r.detected_round {
            let _ = writeln!(s, "detected      round {d}");
        }
        s
    }

    fn csv(&self) -> String {
        let r = &self.simulation;
        format!(
            "game,rounds,seed,deviator,avg1,avg2,se1,se2,target1,target2,detected_round\n{},{},{},{},{},{},{},{},{},{},{}\n",
            self.game,
            r.rounds,
            r.seed,
            deviator_label(r.deviator),
            r.average.p1,
            r.average.p2,
            r.std_error.p1,
            r.std_error.p2,
            r.target.p1,
            r.target.p2,
            opt(r.detected_round)
        )
    }
}

pub fn deviator_label(d: folkegal_core::simulate::Deviator) -> String {
    use folkegal_core::simulate::Deviator;
    match d {
        Deviator::None => "none".into(),
        Deviator::BestResponseOnce(p) => format!("best_response_once:{p}"),
        Deviator::Random(p) => format!("random:{p}"),
    }
}

impl Render for ReproduceReport {
    fn table(&self) -> String {
        let mut s = String::new();
        let mut last = "";
        for row in &self.rows {
            if row.game != last {
                if !last.is_empty() {
                    s.push('\n');
                }
                let _ = writeln!(s, "{}", row.game);
                let _ = writeln!(s, "  {:<10} {:>9} {:>9}", "solver", "player 1", "player 2");
                last = &row.game;
            }
            let mark = if row.converged { "" } else { "  *" };
            let _ = writeln!(
                s,
                "  {:<10} {:>9.1} {:>9.1}{mark}",
                row.solver.name(),
                row.payoff.p1,
                row.payoff.p2
            );
        }
        if self.rows.iter().any(|r| !r.converged) {
            s.push_str("\n* did not converge within the sweep limit\n");
        }
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from("game,solver,p1,p2,converged\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{},{}", r.game, r.solver.name(), r.payoff.p1, r.payoff.p2, r.converged);
        }
        s
    }
}
