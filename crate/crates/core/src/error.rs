use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is well formed but the computation has no meaningful answer.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("no quotable sub-game outcomes")]
    EmptySubGame,

    #[error("snapshot {index}: {reason}")]
    Snapshot { index: usize, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
}
