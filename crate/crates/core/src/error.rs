use thiserror::Error;

/// Errors produced by the curvature and majorization routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("incomparable dimensions: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("not a density vector: {0}")]
    NotDensity(String),

    #[error("not a density spectrum: {0}")]
    NotSpectrum(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("undefined parameter: p = 0")]
    UndefinedParameter,

    #[error("parameter p = {0} is not operator monotone (outside (-inf,-1] U [1/2,+inf])")]
    NotAdmissible(f64),

    #[error("insufficient margin for stencil: {0}")]
    Margin(String),

    #[error("too close to state-space boundary: |r| = {0}")]
    Boundary(f64),

    #[error("tangent vector entries must sum to 0 (sum = {0})")]
    NotTangent(f64),

    #[error("singular metric at evaluation point")]
    SingularMetric,

    #[error(
        "target evaluation failed on pair #{index} ({more_mixed:?} vs {less_mixed:?}): {source}"
    )]
    Target {
        index: usize,
        more_mixed: Vec<f64>,
        less_mixed: Vec<f64>,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
