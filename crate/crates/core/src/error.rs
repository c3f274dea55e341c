use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// Malformed hypergraph text.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An internal cross-check failed; indicates a bug, never bad input.
    #[error("consistency check failed: {0}")]
    Consistency(String),
    /// An exhaustive search ran out of its node budget.
    #[error("search incomplete: budget of {budget} nodes exhausted")]
    Incomplete { budget: u64 },
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
