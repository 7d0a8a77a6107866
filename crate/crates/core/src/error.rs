use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} is not an element of the group")]
    NotInGroup(String),

    #[error("group is not soluble")]
    NotSoluble,

    #[error("degree budget exceeded: required degree {required}, maximum {max}{hint}")]
    DegreeBudget {
        required: u128,
        max: usize,
        hint: &'static str,
    },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("Sylow system corrupt: {0}")]
    SylowCorrupt(String),

    #[error("oracle scale exceeded: group order {order} is above the cap {cap}")]
    OracleScale { order: String, cap: usize },

    #[error("product budget exceeded: {pairs} pairs is above the budget {budget}")]
    PairBudget { pairs: u128, budget: u64 },

    #[error("missing profile entry for {0}")]
    MissingProfile(String),

    #[error("internal error: {0}")]
    Internal(String),
}
