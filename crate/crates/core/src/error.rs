use thiserror::Error;

/// Errors raised by curve, cover, construction and oracle operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a curve: {0}")]
    NotACurve(String),
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown leg `{0}`")]
    UnknownLeg(String),
    #[error("not stably equivalent to a stable curve: {0}")]
    Unstable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
