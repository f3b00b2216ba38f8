//! Exact refinement checks for finite signaling games and a steady-state
//! learning simulator.
//!
//! The static side works in exact rationals: [`game`] holds games and
//! strategies, [`feasibility`] is the linear-feasibility kernel, [`compat`]
//! computes the rational compatibility order, and [`refine`] decides the
//! refinement verdicts. The [`learning`] side is floating point and Monte-Carlo.

pub mod compat;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod feasibility;
pub mod format;
pub mod learning;
pub mod game;
pub mod polytope;
pub mod rational;
pub mod refine;
pub mod suite;

pub use compat::{compatibility_order, more_compatible, rationally_strictly_dominant, rationally_strictly_dominated, CompatibilityOrder};
pub use error::{Error, Result};
pub use feasibility::{is_feasible, Feasibility, LinearSystem, SimplexBlock};
pub use game::{Belief, ReceiverStrategy, SenderStrategy, SignalingGame, StrategyProfile};
pub use polytope::BeliefPolytope;
pub use rational::Q;
pub use refine::{Analysis, RefinementReport};
