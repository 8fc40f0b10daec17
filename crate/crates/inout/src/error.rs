//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a documented precondition (η outside (0,1/2), Z ≤ e, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Point/body dimensions disagree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The operation is not defined for this body kind; never silently approximated.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A numerical tolerance could not be met (grid too small, projection not converged, ...).
    #[error("tolerance violated: {0}")]
    Tolerance(String),

    /// A safety cap tripped; usually a sign of a mis-set schedule or a pathological body.
    #[error("diagnostics: {0}")]
    Diagnostics(String),

    /// Configuration file or flag errors.
    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
