use thiserror::Error;

/// Failure modes shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Parameters lie outside the region where the formula or procedure is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed input: arity mismatches, unknown names, inconsistent shapes.
    #[error("usage error: {0}")]
    Usage(String),
    /// The instance exceeds what the exact searches are allowed to handle.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// A supported shape that this crate deliberately does not handle.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A finite search found no admissible answer at this magnitude.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// A randomized search ran out of budget before meeting its guarantee.
    #[error("search failure: {0}")]
    SearchFailure(String),
    /// An identity or inequality that must hold was observed to fail.
    #[error("certification failure: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
