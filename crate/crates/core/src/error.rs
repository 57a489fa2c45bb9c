use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit status.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Non-finite entries or malformed raw input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A numeric argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Shapes, contexts or parities do not line up.
    #[error("structural mismatch: {0}")]
    Structure(String),

    /// A cochain cannot be evaluated with the unit in one slot.
    #[error("unsupported operand: {0}")]
    UnsupportedOperand(String),

    /// A precondition on the inputs failed (for example a non-cocycle handed to the solver).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A matrix that must be inverted is singular.
    #[error("numerical singularity at t = {t}: {detail}")]
    Singular { t: f64, detail: String },

    /// Scenario or cochain file could not be parsed.
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
