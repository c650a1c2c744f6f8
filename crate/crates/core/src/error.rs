use thiserror::Error;

/// Errors raised by the domain checks of this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("base must be in 2..=256, got {0}")]
    InvalidBase(u64),

    #[error("digit {digit} is not valid in base {base}")]
    InvalidDigit { digit: u64, base: u32 },

    #[error("word `{0}` is not a canonical expansion (leading zero)")]
    NotCanonical(String),

    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("word of length {len} exceeds the trie size guard of {limit}")]
    TrieTooLarge { len: usize, limit: usize },

    #[error("trie and block decomposition were built from different words")]
    MismatchedInputs,

    #[error("{0} is out of range")]
    OutOfRange(String),

    #[error("oracle budget of {budget} evaluations exceeded (requested {requested})")]
    BudgetExceeded { budget: u64, requested: String },

    #[error("cannot parse `{0}`")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
