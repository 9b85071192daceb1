//! Instance generation, experiment orchestration, and report files for
//! [`pldg_core`]: JSON trial records, a CSV summary, and SVG drawings.

pub mod config;
mod error;
pub mod exec;
pub mod experiment;
pub mod generate;
pub mod record;
pub mod summary;
pub mod svg;

pub use config::{ExperimentConfig, GeneratorKind, VariantChoice};
pub use error::{PldgError, Result};
pub use exec::Rayon;
pub use experiment::{
    run_experiment, run_trial, ExperimentOptions, ExperimentSummary, TrialOutcome,
};
pub use generate::generate;
