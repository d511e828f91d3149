//! Two-player discounted stochastic games and the egalitarian equilibrium
//! search built on top of them.

pub mod error;
pub mod folkegal;
pub mod eval;
pub mod game;
pub mod geometry;
pub mod lp;
pub mod matrix;
pub mod oracle;
mod mdp;
pub mod policy;
pub mod simulate;
pub mod solvers;

pub use error::{GameError, Result};
pub use game::{GameBuilder, Player, StochasticGame};
pub use geometry::{egal_value, line_side, mix_points, AdvantagePoint, PayoffPoint, Side};
pub use policy::{JointPolicy, MixedPolicy};
pub use folkegal::{check_enforceable, folk_egal, EquilibriumProfile, ProfileMode, SearchTrace};
