use thiserror::Error;

use crate::vote::VoteRule;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("rule `{0}` needs a gamma-mode instance")]
    RuleModeMismatch(&'static str),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("instance has {edges} edges, enumeration limit is {limit} (raise it with --limit)")]
    TooLarge { edges: usize, limit: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn mode_mismatch(rule: VoteRule) -> Self {
        Error::RuleModeMismatch(rule.name())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
