//! Population-based optimizers for finite element model updating.
//!
//! The crate contains three bounded continuous optimizers sharing one set of
//! contracts ([`optimizer`]):
//!
//! * [`fss`]: Fish School Search, with an optional biased feeding rule that
//!   rewards the school's best fish more strongly (FSSb).
//! * [`pso`]: inertia-weight particle swarm optimization.
//! * [`ga`]: a real-coded genetic algorithm.
//!
//! They are applied to a free-free Euler–Bernoulli frame model of a small
//! aeroplane ([`fem`]) whose density and wing/tail section inertias are
//! tuned until its natural frequencies match a measured set. [`harness`]
//! wires the objective, the repeated-trial benchmark protocol and the file
//! outputs together.

pub mod error;
pub mod fem;
pub mod fss;
pub mod ga;
pub mod harness;
pub mod optimizer;
pub mod pso;

pub use error::{Error, Result};
pub use optimizer::{
    Algorithm, Candidate, FnObjective, Objective, RunRecord, RunSettings, SearchSpace,
};
