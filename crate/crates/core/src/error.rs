use thiserror::Error;

/// Errors raised while building or evaluating a game.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("operator is not Hermitian (max asymmetry {max_asymmetry:.3e})")]
    NotHermitian { max_asymmetry: f64 },

    #[error("state error: {0}")]
    State(String),

    /// The state has weight on truncation-boundary levels, so algebraic
    /// bounds computed from it are unreliable.
    #[error("truncation error: state amplitude {amplitude:.3e} at boundary level {level}")]
    Truncation { level: usize, amplitude: f64 },

    #[error("capacity error: dimension {dim} exceeds limit {limit}")]
    Capacity { dim: usize, limit: usize },

    #[error("coefficient error: {0}")]
    Coefficient(String),

    #[error("representation error: {0}")]
    Representation(String),

    #[error("label error: {0}")]
    Label(String),

    #[error("invalid parameters: {0}")]
    Params(String),
}

pub type Result<T> = std::result::Result<T, GameError>;
