use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{f}) exceeds the supported field size")]
    FieldTooLarge { p: u32, f: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value does not belong to this field context")]
    ContextMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("group over GF({0}) is too large to tabulate")]
    GroupTooLarge(u32),
    #[error("subset is not closed under multiplication")]
    NotClosed,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),
    #[error("graph is not a simple cubic graph: {0}")]
    NotCubic(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("the Aut(G,S) criterion is not available for q = 11")]
    CriterionUnavailable,
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
