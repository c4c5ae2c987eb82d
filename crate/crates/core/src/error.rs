use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, LabError>;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("under-resolved: {what} = {value} is below the grid limit {limit}")]
    UnderResolved {
        what: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical blow-up at t = {t} (dt = {dt})")]
    BlowUp { t: f64, dt: f64 },

    #[error("need at least {needed} samples in [{a}, {b}], found {found}")]
    InsufficientSamples {
        needed: usize,
        found: usize,
        a: f64,
        b: f64,
    },

    #[error("every trajectory in the sweep failed")]
    AllRunsFailed,

    #[error("I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("could not parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl LabError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io {
            path: path.into(),
            source,
        }
    }
}
