use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid search space: {0}")]
    InvalidSearchSpace(String),

    #[error("invalid settings: {0}")]
    InvalidSettings(String),

    #[error("max_iter must be positive")]
    ZeroMaxIter,

    #[error("iteration {iter} outside 0..={max_iter}")]
    IterOutOfRange { iter: usize, max_iter: usize },

    #[error("empty population")]
    EmptyPopulation,

    #[error("invalid element {index}: {reason}")]
    InvalidElement { index: usize, reason: String },

    #[error("invalid parameter {name} = {value}: must be strictly positive and finite")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("mesh is disconnected: {components} components")]
    DisconnectedMesh { components: usize },

    #[error("mass matrix is not positive definite")]
    MassNotPositiveDefinite,

    #[error("stiffness matrix is not positive semidefinite")]
    StiffnessIndefinite,

    #[error("requested {requested} elastic modes but only {available} are available")]
    NotEnoughModes { requested: usize, available: usize },

    #[error("invalid frequency data: {0}")]
    InvalidFrequencies(String),

    #[error("objective evaluation failed at {position:?}: {source}")]
    Objective {
        position: Vec<f64>,
        #[source]
        source: Box<Error>,
    },

    #[error("objective returned a non-finite cost {cost} at {position:?}")]
    NonFiniteCost { cost: f64, position: Vec<f64> },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("config parse error: {0}")]
    Config(#[from] toml::de::Error),
}

impl Error {
    /// An I/O failure on `path`.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
