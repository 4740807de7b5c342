use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A finite prefix ran out of partial quotients before a predicate was decided.
    /// `needed` is the number of quotients (a_0 counts as one) that would be required.
    #[error("precision exhausted: at least {needed} partial quotients are needed")]
    PrecisionExhausted { needed: usize },
    #[error("lattice elements refer to different irrationals")]
    MismatchedTheta,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("seed rejected: a2 = {0} is not squarefree")]
    SeedRejected(String),
    #[error("no fresh prime found below {cap}")]
    PrimePickerExhausted { cap: u64 },
    #[error("could not completely factor {0}")]
    FactorizationIncomplete(String),
    #[error("no directed path from {from} to {to} at this depth")]
    NoPath { from: String, to: String },
    #[error("{0} is not a division point of this tree")]
    NotDivisionPoint(String),
    #[error("tolerance not reached within depth cap {cap}")]
    TolTooTight { cap: usize },
    #[error("unsupported render object: {0}")]
    UnsupportedObject(String),
}

impl Error {
    pub(crate) fn exhausted(needed: usize) -> Self {
        Error::PrecisionExhausted { needed }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
