//! Configuration-driven pipelines: admissibility checks, classification
//! scans, prolongation runs and weight diagrams, each writing a deterministic
//! report and returning an exit code.

pub mod config;
pub mod jobs;
pub mod render;

use std::path::PathBuf;

use tanaka_core::LieError;
use tanaka_graded::GradedError;
use tanaka_prolong::ProlongError;
use thiserror::Error;

pub use config::{load_config, parse_config, AlgebraConfig, Bounds, JobConfig, ModuleConfig, ModulePreset, ModuleSpec, OutputConfig};
pub use jobs::{
    classify, execute, prolong, run_check, CheckOutcome, ClassifyEntry, ClassifyReport, Command, EntryStatus, Execution, Options,
    Overrides, ProlongRun,
};
pub use render::{diagram_spec, DiagramSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_NONE: i32 = 3;

pub const THREADS_VAR: &str = "TANAKA_FORGE_THREADS";

#[derive(Debug, Error)]
pub enum ForgeError {
    /// Malformed or inconsistent configuration.
    #[error("{0}")]
    Input(String),
    /// A computation failed or a hard invariant fired.
    #[error("{0}")]
    Failure(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl ForgeError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ForgeError::Input(_) | ForgeError::Io { .. } => EXIT_INPUT,
            ForgeError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl From<GradedError> for ForgeError {
    fn from(e: GradedError) -> Self {
        match e {
            GradedError::ConditionDisagreement(_) => ForgeError::Failure(e.to_string()),
            _ => ForgeError::Input(e.to_string()),
        }
    }
}

impl From<LieError> for ForgeError {
    fn from(e: LieError) -> Self {
        ForgeError::Input(e.to_string())
    }
}

impl From<ProlongError> for ForgeError {
    fn from(e: ProlongError) -> Self {
        match e {
            ProlongError::Input(_) | ProlongError::InvalidNilpotent { .. } | ProlongError::Graded(_) => {
                ForgeError::Input(e.to_string())
            }
            _ => ForgeError::Failure(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, ForgeError>;
