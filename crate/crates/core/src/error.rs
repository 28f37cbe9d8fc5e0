use thiserror::Error;

/// Errors shared across the engine.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("user {0} appears in both operands of a concatenation")]
    OverlappingUsers(usize),

    #[error("operation requires a social graph but the game has none")]
    MissingSocialGraph,

    #[error("operation requires a grouping but the game has none")]
    MissingGrouping,

    #[error("profile must contain all {expected} users, found {found}")]
    IncompleteProfile { expected: usize, found: usize },

    #[error("base profile of a union composition must be complete")]
    IncompleteOmega,

    #[error("strategy for user {user} is not a probability distribution ({detail})")]
    DegenerateDistribution { user: usize, detail: String },

    #[error("strategy profile does not match the game ({0})")]
    StrategyShape(String),

    #[error("enumeration would visit {required} outcomes, above the cap of {cap}")]
    ResourceLimit { required: u128, cap: u64 },

    #[error("empty-context marginal for decider {index} is {value}; social utility is not nondecreasing")]
    NondecreasingViolated { index: usize, value: f64 },

    #[error("{statement} not stamped: {missing}")]
    HypothesisUnverified { statement: String, missing: String },

    #[error("user {user} plays an empty channel set")]
    EmptyChannelSet { user: usize },

    #[error("social ties between users {0} and {1} are not symmetric")]
    AsymmetricTies(usize, usize),

    #[error("transmission powers are not all equal")]
    UnequalPowers,

    #[error("invalid parameter: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
