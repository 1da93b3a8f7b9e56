use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("pair budget exceeded: more than {budget} pair reductions")]
    BudgetExceeded { budget: usize },
    #[error("ideal is not zero-dimensional")]
    PositiveDimensional,
    #[error("invalid hypersurface: {0}")]
    InvalidHypersurface(String),
    #[error("invalid local model: {0}")]
    InvalidLocalModel(String),
    #[error("origin is not the only critical point of the germ; localize first")]
    NotLocalized,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Io(String),
    #[error("graph error: {0}")]
    Graph(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
