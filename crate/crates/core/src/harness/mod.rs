//! Experiment harness: measure-spec parsing, the function catalog,
//! the identity-verification suite, and convergence experiments. The
//! `szego` CLI is a thin shell over this module.

pub mod catalog;
pub mod config;
pub mod convergence;
pub mod spec;
pub mod verify;

pub use catalog::FunctionId;
pub use config::{ExperimentConfig, OutputFormat, WStrategy};
pub use convergence::{run_convergence, ConvergenceReport, Row};
pub use spec::parse_measure_spec;
pub use verify::{run_verify, VerifyCheck, VerifyReport};

use thiserror::Error;

use crate::measure::MeasureError;
use crate::opuc::OpucError;
use crate::paraorth::ParaorthError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("measure spec error: {0}")]
    Spec(#[from] spec::SpecParseError),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Opuc(#[from] OpucError),
    #[error(transparent)]
    Paraorth(#[from] ParaorthError),
}

impl HarnessError {
    /// CLI exit code: 1 for usage/parse problems, 2 for numerical
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Spec(_) | HarnessError::Config(_) => 1,
            HarnessError::Measure(MeasureError::InvalidParameter(_)) => 1,
            HarnessError::Measure(MeasureError::QuadratureNonConvergence { .. }) => 2,
            HarnessError::Opuc(OpucError::InsufficientMoments { .. }) => 1,
            HarnessError::Opuc(OpucError::DegenerateMeasure { .. }) => 2,
            HarnessError::Paraorth(_) => 2,
        }
    }
}
