use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid integration domain [{lower}, {upper}]")]
    InvalidDomain { lower: f64, upper: f64 },

    #[error("no convergence: {0}")]
    NonConvergent(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("{x} is outside the support [{lower}, {upper}]")]
    OutOfSupport { x: f64, lower: f64, upper: f64 },

    #[error("no closed form is tabulated for {0}")]
    NoClosedForm(String),

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("truncated series sum {0} is not positive")]
    NegativeBase(f64),

    #[error("no bound is stated for alpha = {alpha}, beta = {beta}")]
    RegimeUnsupported { alpha: f64, beta: f64 },

    #[error("support of the first density is not contained in the support of the second")]
    SupportMismatch,

    #[error("map is not strictly monotone on the support: {0}")]
    NonMonotone(String),

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("ratio is unbounded on (0, 1): {0}")]
    Unbounded(String),

    #[error("orbit escaped at step {step} (|x| = {value:e})")]
    Escape { step: usize, value: f64 },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParam(msg.into())
}
