//! Scenario parsing and report generation for the `coincidence` command-line tool.

pub mod commands;
pub mod config;
pub mod error;

pub use config::{Scenario, SweepAxis};
pub use error::CliError;
