//! Machine-readable command outputs. Field sets are fixed; see
//! `docs/formats.md`.

use folkegal_core::folkegal::{EnforceabilityReport, SearchTrace};
use folkegal_core::oracle::HullVertex;
use folkegal_core::simulate::SimReport;
use folkegal_core::{AdvantagePoint, PayoffPoint, ProfileMode};
use serde::{Deserialize, Serialize};

use crate::config::SolverKind;

pub const REPORT_FORMAT: &str = "folkegal-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSummary {
    pub nu0: f64,
    pub bound: usize,
    pub iterations: usize,
    pub mdp_solves: usize,
    pub final_area: Option<f64>,
}

impl From<&SearchTrace> for TraceSummary {
    fn from(t: &SearchTrace) -> Self {
        Self {
            nu0: t.nu0,
            bound: t.bound,
            iterations: t.iterations.len(),
            mdp_solves: t.mdp_solves,
            final_area: t.iterations.last().map(|it| it.area),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveReport {
    pub format: String,
    pub game: String,
    pub solver: SolverKind,
    pub eps: f64,
    pub payoff: PayoffPoint,
    pub disagreement: PayoffPoint,
    pub advantage: AdvantagePoint,
    pub egal_value: f64,
    pub converged: bool,
    pub sweeps: Option<usize>,
    pub mode: Option<ProfileMode>,
    pub lambda: Option<f64>,
    pub enforceability: Option<EnforceabilityReport>,
    pub trace: Option<TraceSummary>,
}

impl SolveReport {
    pub fn min_payoff(&self) -> f64 {
        self.payoff.p1.min(self.payoff.p2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OracleMethod {
    /// Enumerate every deterministic joint policy and build the hull.
    Enumerate,
    /// Solve the occupancy-measure LP for the egalitarian point directly.
    Occupancy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleReport {
    pub format: String,
    pub game: String,
    pub method: OracleMethod,
    pub eps: f64,
    pub disagreement: PayoffPoint,
    pub point: PayoffPoint,
    pub egal_value: f64,
    pub policies_enumerated: Option<u64>,
    pub vertices: Option<Vec<HullVertex>>,
    pub folkegal_payoff: PayoffPoint,
    pub folkegal_egal_value: f64,
    /// Whether FolkEgal is within eps of the oracle's egalitarian value.
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateReport {
    pub format: String,
    pub game: String,
    pub eps: f64,
    pub mode: ProfileMode,
    pub lambda: Option<f64>,
    pub simulation: SimReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReproduceRow {
    pub game: String,
    pub solver: SolverKind,
    pub payoff: PayoffPoint,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReproduceReport {
    pub format: String,
    pub eps: f64,
    pub rows: Vec<ReproduceRow>,
}
