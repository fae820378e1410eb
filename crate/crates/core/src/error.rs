use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("chore {chore} is out of range for m = {m}")]
    InvalidChore { chore: usize, m: usize },

    #[error("chore {0} is already in the set")]
    ChoreAlreadyPresent(usize),

    #[error("{what} exceeds the exhaustive-check bound ({size} > {bound})")]
    TooLargeForExhaustiveCheck { what: &'static str, size: u128, bound: u128 },

    #[error("costs not certified binary supermodular (agent {agent})")]
    UncertifiedCosts { agent: usize },

    #[error("costs not identical across agents (agent {agent} differs from agent 0)")]
    NotIdenticalCosts { agent: usize },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid cost specification: {0}")]
    InvalidCostSpec(String),

    #[error("no chore in the set decrements the cost; the oracle is not binary supermodular")]
    NoDecrementFound,

    #[error("input allocation is not social-cost minimizing (cost {found}, minimum {minimum})")]
    InputNotScm { found: u64, minimum: u64 },

    #[error("schema error at {context}: {message}")]
    Schema { context: String, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown builtin instance `{0}`")]
    UnknownBuiltin(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
