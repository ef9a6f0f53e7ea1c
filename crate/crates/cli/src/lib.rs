//! Configuration-driven verification runner for `superbethe-core`.
//!
//! A run expands a JSON [`config::RunConfig`] into a list of exact checks
//! (see [`suites::plan`]), evaluates them on a worker pool and collects a
//! [`report::Report`]. A residual is either exactly zero or the check fails.

pub mod config;
pub mod report;
pub mod sample;
pub mod suites;

pub use config::{load_config, parse_config, RunConfig, SchemaError};
pub use report::{emit_report, Report};
pub use suites::run_suite;
