//! Phase-transition toolkit for the random b-uniform hypergraph process:
//! exact enumeration of connected components by excess, expectation sums
//! for cycle-creation and growth events, saddle-point coefficient
//! asymptotics, and a deterministic process simulator.

pub mod bivariate;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod expectation;
pub mod saddle;
pub mod scalar;
pub mod sim;
pub mod series;
pub mod transition;
pub mod verify;

pub use error::{Error, Result};

/// Seed used whenever the caller does not supply one.
pub const DEFAULT_SEED: u64 = 1729;
