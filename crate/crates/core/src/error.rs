use thiserror::Error;

/// Errors produced by the annulus-graph toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("point is not on the unit sphere (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("pair ({u}, {v}) at distance {distance} lies within tolerance of radius {radius}")]
    BoundaryAmbiguity {
        u: usize,
        v: usize,
        distance: f64,
        radius: f64,
    },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
