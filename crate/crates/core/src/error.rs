use thiserror::Error;

/// Errors raised by the monoid toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chain size {0} is outside the supported range 3..=32")]
    ChainSize(usize),

    #[error("chain sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("expected an element of rank {expected}, found rank {found}")]
    Rank { expected: usize, found: usize },

    #[error("power 0 is only defined for total maps")]
    ZeroPowerOfPartial,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("element is not orientation-preserving")]
    NotOrientationPreserving,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("set is not closed: {0}")]
    NotClosed(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("generator {name} is undefined at n = {n}")]
    UndefinedGenerator { name: String, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
