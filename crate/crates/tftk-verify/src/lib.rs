//! Deterministic experiment runner for the time-frequency toolkit.
//!
//! Each experiment packages one theorem-level numerical check: seeded
//! randomness, per-trial records, a declared tolerance, and a pass flag.
//! The `verify` binary exposes them as subcommands; reruns with the same
//! configuration and seed are byte-identical.

pub mod config;
pub mod experiments;
pub mod report;
pub mod rng;

pub use config::{ConfigError, ExperimentConfig, ExperimentName, ALL_EXPERIMENTS};
pub use experiments::{run_experiment, RunError};
pub use report::{emit_report, from_json, to_csv, to_json, Report, ReportFormat, TrialRecord};
