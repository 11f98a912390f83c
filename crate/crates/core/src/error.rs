use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Caller supplied an argument outside the operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The request would exceed a hard enumeration or summation cap.
    #[error("resource bound exceeded: {what} = {requested} exceeds limit {limit}")]
    ResourceBound {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    /// A precondition on a diagram or series was not met.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// A series coefficient landed outside the expected exponent lattice.
    #[error("structural violation: {0}")]
    StructuralViolation(String),

    #[error("singular matrix: {0}")]
    Singular(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
