//! Exact tooling for fixing single-elimination tournaments: decide whether a
//! favorite can be seeded to win, measure how far an instance is from the
//! easy acyclic cases, construct winning seedings under structural
//! sufficient conditions, and build the gadget instances that pin the hard
//! boundary. Everything is desk-scale and cross-checked against brute force.

// Index loops read better than iterator chains for adjacency matrices.
#![allow(clippy::needless_range_loop)]

pub mod bracket;
pub mod error;
pub mod generator;
pub mod params;
pub mod player_set;
pub mod reductions;
pub mod solver;
pub mod structure;
pub mod tournament;

pub use bracket::{Bracket, MatchSet, MatchSetSequence};
pub use error::{Error, Result};
pub use params::ParameterReport;
pub use player_set::{PlayerSet, MAX_PLAYERS};
pub use reductions::GadgetOutput;
pub use solver::Solver;
pub use structure::ConditionReport;
pub use tournament::Tournament;
