//! Discrete-time quantum walks on a line with one, two or three coins,
//! driven by periodic, alternating, constant or random game schedules.
//!
//! A step applies the tensored coin for that step at every lattice site and
//! then the coin-conditioned shift. Each step's outcome is scored by
//! `P_R − P_L`, the probability of finding the walker strictly right of the
//! origin minus strictly left of it.

pub mod analysis;
pub mod coin;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod shift;
pub mod state;

pub use error::{Error, Result};
