//! Command-line driver for `dhom-core`: reads algebra specs, runs one computation
//! and emits a deterministic JSON or markdown report.

pub mod doc;
pub mod fixtures;
pub mod names;
pub mod report;
pub mod run;

use dhom_core::Error as CoreError;
use thiserror::Error;

pub use doc::AlgebraSpecDoc;
pub use report::{Format, Output, Report};
pub use run::{run, Command, Options};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 for bad or unsupported input, 1 when a computation hit an anomaly.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) => 2,
            CliError::Core(e) => match e {
                CoreError::InvalidQuiver(_)
                | CoreError::InvalidRelation(_)
                | CoreError::NonAdmissible(_)
                | CoreError::InfiniteDimensional(_)
                | CoreError::ExceedsBound(_)
                | CoreError::NotRepresentationFinite(_)
                | CoreError::UnsupportedAlgebraClass(_)
                | CoreError::Precondition(_) => 2,
                CoreError::NotStrong(_)
                | CoreError::ConstructionFailed { .. }
                | CoreError::NotHomologicalEpi(_)
                | CoreError::Disagreement(_)
                | CoreError::NoFactorization(_)
                | CoreError::AnomalyDetected(_) => 1,
            },
        }
    }
}
