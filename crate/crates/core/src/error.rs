use thiserror::Error;

/// Failure modes shared by every layer of the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("search budget exceeded: {evaluated} candidates > {budget}")]
    BudgetExceeded { evaluated: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
