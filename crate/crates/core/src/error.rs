use thiserror::Error;

/// Errors raised by the library. The variants map one-to-one onto the
/// command-line exit codes (invalid argument, cap exceeded, invariant failure).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {got} exceeds the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: u64,
        got: u64,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn check_cap(what: &'static str, got: u64, limit: u64) -> Result<()> {
    if got > limit {
        Err(Error::CapExceeded { what, limit, got })
    } else {
        Ok(())
    }
}
