use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("sieve limit {limit} exceeds configured cap {cap}")]
    Capacity { limit: u64, cap: u64 },

    /// A query reached past the end of the sieved range.
    #[error("x = {x} is beyond the table limit {limit}")]
    OutOfRange { x: f64, limit: u64 },

    #[error("table cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
