use thiserror::Error;

/// Errors raised by the order unit space toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element is not an effect")]
    NotAnEffect,
    #[error("element is not positive")]
    NotPositive,
    #[error("element is not a projection")]
    NotAProjection,
    #[error("map is not an F-compression: {0}")]
    NotFCompression(String),
    #[error("no complementary F-compression can be constructed for this map")]
    NoComplementAvailable,
    #[error("projection is not a member of the compression base")]
    UnknownProjection,
    #[error("projection family is not enumerable: {0}")]
    NotEnumerable(String),
    #[error("comparability unavailable: {0}")]
    ComparabilityUnavailable(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("the zero functional has no norming face")]
    ZeroFunctional,
    #[error("the zero vector has no norming face")]
    ZeroVector,
    #[error("focus is not sharp: {0}")]
    NotSharpFocus(String),
    #[error("x does not attain the dual norm of y on the unit ball")]
    NotNormAttaining,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("report version mismatch: {0} vs {1}")]
    VersionMismatch(String, String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
