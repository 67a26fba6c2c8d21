use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field size {0}: expected one of 2, 3, 5, 7")]
    UnsupportedField(u32),
    #[error("shape mismatch: {0}")]
    Mismatch(String),
    #[error("undefined input: {0}")]
    UndefinedInput(&'static str),
    /// Long division left a nonzero remainder (coefficients in ascending order).
    #[error("not divisible: remainder {remainder:?}")]
    NotDivisible { remainder: Vec<u8> },
    #[error("{what} out of range: {value} not in {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    /// An exhaustive enumeration would visit more messages than allowed.
    #[error("enumeration of {required} messages exceeds budget {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("catalog entry {entry}: {reason}")]
    Catalog { entry: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
