use thiserror::Error;

/// Everything that can go wrong while building or checking a construction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("invalid letter name `{0}`")]
    InvalidLetter(String),

    #[error("rule {0} has identical sides")]
    TrivialRule(usize),

    #[error("side of rule {rule} does not occur at position {position}")]
    OccurrenceMismatch { rule: usize, position: usize },

    #[error("path edges do not compose: {0}")]
    BrokenPath(String),

    #[error("completion did not converge within {what} limit {limit}")]
    LimitExceeded { what: &'static str, limit: usize },

    #[error("more than {0} elements found")]
    CapExceeded(usize),

    #[error("word does not stabilize the H-class pointwise (h·e ≠ h)")]
    NotPointwiseStabilizer,

    #[error("action killed: {0}")]
    ActionKilled(String),

    #[error("precondition ({clause}) violated: {detail}")]
    PreconditionViolated { clause: &'static str, detail: String },

    #[error("path search exhausted while building {what}")]
    SearchExhausted { what: String },

    #[error("presented monoid is not a group: {0}")]
    NotAGroup(String),

    #[error("group order {0} exceeds the isomorphism limit")]
    OrderTooLarge(usize),

    #[error("{0}")]
    Input(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for this error: 1 input, 2 resource cap, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::DuplicateLetter(_)
            | Error::UnknownLetter(_)
            | Error::InvalidLetter(_)
            | Error::TrivialRule(_)
            | Error::NotPointwiseStabilizer
            | Error::Input(_) => 1,
            Error::LimitExceeded { .. }
            | Error::CapExceeded(_)
            | Error::SearchExhausted { .. }
            | Error::OrderTooLarge(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
