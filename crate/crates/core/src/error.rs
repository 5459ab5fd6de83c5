use thiserror::Error;

/// Errors produced by the network model, the structural analyses and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CbnError {
    #[error("dimension mismatch: expected {expected} bits, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid control specification: {0}")]
    Spec(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("not controllable: {0}")]
    NotControllable(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CbnError>;
