//! Batch experiment driver: load a TOML configuration, run one of the exact
//! experiments, and emit deterministic JSON (and optionally CSV) reports.

#![allow(clippy::needless_range_loop)]

pub mod config;
pub mod experiments;
pub mod report;
pub mod spectrum;

pub use config::{ExperimentConfig, ExperimentKind, Params};
pub use experiments::{run, ExperimentError};
pub use report::{CheckRecord, Report};
