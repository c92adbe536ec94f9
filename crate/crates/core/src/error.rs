use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("coefficient rings differ (m = {0} vs m = {1})")]
    RingMismatch(u32, u32),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("{what} exceeded the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("letter {letter} out of range for rank {rank}")]
    BadLetter { letter: usize, rank: usize },
    #[error("value is not integral: {0}")]
    NotIntegral(String),
    #[error("operation needs a crystallographic root datum")]
    NotCrystallographic,
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
