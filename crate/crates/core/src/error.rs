use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid grid function: {0}")]
    InvalidValues(String),

    #[error("grid spacing mismatch: {left} vs {right}")]
    SpacingMismatch { left: f64, right: f64 },

    #[error(
        "domain overflow: kernel standard deviation {std_dev} exceeds {limit} (use evolve_at or selfsimilar_rescale)"
    )]
    DomainOverflow { std_dev: f64, limit: f64 },

    #[error("zero mass")]
    ZeroMass,

    #[error("density must have unit mass, got {0}")]
    NonUnitMass(f64),

    #[error("empty input list")]
    EmptyInput,

    #[error("invalid exponent system: {0}")]
    InvalidExponents(String),

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("invalid time grid: {0}")]
    InvalidTimeGrid(String),

    #[error("trace too short: {0} points (need at least 3)")]
    TraceTooShort(usize),

    #[error("trace has no analytic limit")]
    MissingLimit,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Config(err.to_string())
    }
}
