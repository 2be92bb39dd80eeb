//! Batch driver for the srax engine: configuration, suites and reports.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

pub use config::{ConfigError, RunConfig, Suite};
pub use report::{Report, Row};
pub use suites::run;
