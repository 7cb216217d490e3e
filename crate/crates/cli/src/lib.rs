//! Convergence studies for the `gjf-core` spectral solvers.
//!
//! A [`StudyConfig`] names a problem kind, one or more orders, a right-hand
//! side from the built-in [`registry`] and a list of truncations. [`run_study`]
//! solves every cell of the grid, measures the errors and attaches observed
//! rates. [`output`] renders the rows as CSV or JSON.

pub mod config;
pub mod output;
pub mod rate;
pub mod registry;
pub mod study;

pub use config::{ConfigError, Format, StudyConfig};
pub use rate::{estimate_rate, super_algebraic, RateError};
pub use study::{run_study, StudyError, StudyRow};
