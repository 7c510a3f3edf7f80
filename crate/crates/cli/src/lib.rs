//! Batch runner: reads a JSON experiment, runs the requested checks and writes `report.json`
//! plus any CSV figure data into an output directory.

pub mod catalog;
pub mod config;
pub mod runner;

pub use catalog::list_catalog;
pub use config::{Experiment, ExperimentConfig};
pub use runner::{run, write_atomic, Artifact, Envelope, Payload, RunReport};
