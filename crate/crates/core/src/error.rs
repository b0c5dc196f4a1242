use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("relations do not generate an admissible ideal: {0}")]
    NonAdmissible(String),
    #[error("algebra is infinite dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("safety cap exceeded: {0}")]
    ExceedsBound(String),
    #[error("algebra is not representation-finite within the cap: {0}")]
    NotRepresentationFinite(String),
    #[error("unsupported algebra class: {0}")]
    UnsupportedAlgebraClass(String),
    #[error("envelope is not strong: {0}")]
    NotStrong(String),
    #[error("construction failed at {stage}: {detail}")]
    ConstructionFailed { stage: String, detail: String },
    #[error("not a homological epimorphism: {0}")]
    NotHomologicalEpi(String),
    #[error("membership routes disagree: {0}")]
    Disagreement(String),
    #[error("no factorization: {0}")]
    NoFactorization(String),
    #[error("anomaly detected: {0}")]
    AnomalyDetected(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
