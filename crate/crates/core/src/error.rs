use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {value} out of range [1, {max}] in coordinate {coord}")]
    OutOfRange { coord: usize, value: u64, max: u64 },

    #[error("operation is undefined on the empty sequence")]
    EmptySequence,

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("reach set exceeds the state cap of {cap} states")]
    StateCapExceeded { cap: usize },

    #[error("search budget exhausted: {0}")]
    BudgetExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    SeqFile { line: usize, msg: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for the errors that a caller may retry with a larger budget.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::StateCapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
