use thiserror::Error;

/// Errors raised by the library. Parse errors carry a 1-based line number.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("signal `{0}` is off the path of play")]
    OffPath(String),

    #[error("belief set is empty")]
    EmptyPolytope,

    #[error("malformed linear system: {0}")]
    MalformedSystem(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("scenario: {0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
