use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} exceeded its budget of {limit}")]
    BudgetExceeded { what: String, limit: u64 },

    #[error("time budget of {0} ms exceeded")]
    TimeExceeded(u64),

    #[error("unsupported allele condition k={0} (expected 2 or 4)")]
    UnsupportedCondition(u32),

    #[error("solution kind `{solution}` does not match instance kind `{instance}`")]
    KindMismatch { instance: String, solution: String },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidInput(message.into())
    }
}
