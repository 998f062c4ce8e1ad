use thiserror::Error;

/// Errors raised by string operations, tester construction and generation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length must be positive")]
    ZeroLength,

    #[error("position out of range: {position} not in 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("positions must be distinct and increasing, got ({first}, {second})")]
    PositionOrder { first: usize, second: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("comparator requires distinct strings")]
    IdenticalStrings,

    #[error("invalid bit character {0:?}")]
    InvalidBit(char),

    #[error("invalid parameter for {language}: {reason}")]
    InvalidParameter { language: String, reason: String },

    #[error("testers disagree on length or pivot: {left} vs {right}")]
    IncompatibleTesters { left: String, right: String },

    #[error("{0} is not a member")]
    NotAMember(String),

    #[error("no successor: the language contains at most one string")]
    NoSuccessor,

    #[error("language too small / not flip-swap: 0^(n-1)1 is not a member")]
    LanguageTooSmall,

    #[error("non-terminating generation after {steps} steps")]
    NonTerminating { steps: u128 },

    #[error("n = {n} exceeds the enumeration bound {bound}")]
    EnumerationBound { n: usize, bound: usize },

    #[error("parse error at column {column}: expected {expected}, found {found}")]
    Parse {
        column: usize,
        expected: String,
        found: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(language: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            language: language.to_string(),
            reason: reason.into(),
        }
    }
}
