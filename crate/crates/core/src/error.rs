use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element {element:?} is not valid in a group with factors {factors:?}")]
    InvalidElement {
        element: Vec<u64>,
        factors: Vec<u64>,
    },

    #[error("operation requires a cyclic group, got factors {0:?}")]
    NotCyclic(Vec<u64>),

    #[error("{divisor} does not divide {modulus}")]
    NotADivisor { divisor: u64, modulus: u64 },

    #[error("invalid multiplier set: {0}")]
    InvalidMultipliers(String),

    #[error("invalid splitter set: {0}")]
    InvalidSplitters(String),

    #[error("not a splitting: {0}")]
    NotASplitting(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit reached: {0}")]
    ResourceLimit(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
