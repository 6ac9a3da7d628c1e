//! Experiment orchestration for the heatblo library: configuration loading,
//! report emission, the per-subcommand pipelines, and the acceptance suite
//! behind `heatblo reproduce`.

pub mod acceptance;
pub mod config;
pub mod experiments;
pub mod report;
pub mod tolerances;
