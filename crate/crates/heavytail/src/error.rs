//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by distribution construction, estimation and inference.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter violates its admissibility constraint.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument violates a structural precondition (e.g. `k` out of range).
    #[error("argument error: {0}")]
    Argument(String),

    /// The sample is degenerate for the requested statistic (ties, constants).
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    /// A linear system denominator fell below the singularity threshold.
    #[error("singular system: {0}")]
    SingularSystem(String),

    /// A statistic could not be estimated from the data.
    #[error("estimation failed: {0}")]
    EstimationFailed(String),

    /// An iterative routine failed to converge.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// The requested quantity is not defined for this reference model.
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
