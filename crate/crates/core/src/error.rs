use thiserror::Error;

/// Errors raised by the covariance-matrix calculus and everything built on it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// Input is outside the domain of the operation (unphysical state,
    /// non-positive temperature, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("singular steering block (condition estimate {condition:e})")]
    Singular { condition: f64 },

    /// Two independent evaluation routes disagreed beyond tolerance.
    #[error("audit mismatch at {context}: closed form {closed_form} vs general {general}")]
    AuditMismatch {
        context: String,
        closed_form: f64,
        general: f64,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
