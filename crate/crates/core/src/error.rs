use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {symbol} out of range for alphabet of size {sigma}")]
    SymbolOutOfRange { symbol: usize, sigma: usize },

    #[error("unknown token {0:?} for this alphabet")]
    UnknownToken(String),

    #[error("words use different alphabets")]
    AlphabetMismatch,

    #[error("range {start}..{end} out of bounds for length {len}")]
    OutOfRange {
        start: usize,
        end: usize,
        len: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operation requires a binary alphabet (got {0} letters)")]
    NotBinary(usize),

    #[error(
        "counts did not stabilize up to prefix cap {cap} (last compared prefix {last_prefix})"
    )]
    NonStabilized { cap: usize, last_prefix: usize },

    #[error("refinement cap exceeded: needed more than {cap} convergents ({reason})")]
    RefinementCap { cap: usize, reason: String },

    #[error("continued fraction has only {available} partial quotients, {required} required")]
    InsufficientQuotients { available: usize, required: usize },

    #[error("search space {size} exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("linear representation produced non-integer value {value} at n = {n}")]
    NonInteger { n: u64, value: String },

    #[error("recurrence system: {0}")]
    Recurrence(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures caused by a configured resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::NonStabilized { .. }
                | Error::RefinementCap { .. }
                | Error::InsufficientQuotients { .. }
                | Error::BudgetExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
