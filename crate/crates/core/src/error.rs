use thiserror::Error;

/// Errors raised while building or evaluating a channel.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two points that must be distinct coincide, or a distance is not positive.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// The scenario is missing data an operation needs.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown target type `{0}`")]
    UnknownTargetType(String),

    /// The requested correlation has no paths to average over.
    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    #[error("scenario parse error: {0}")]
    Parse(String),

    #[error("scenario failed validation: {}", .0.join(", "))]
    Invalid(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
