use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("input error: {0}")]
    Input(String),

    /// An enumeration cap was exceeded (e.g. too many agents for 2^n work).
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// The operation is not defined for this goal or instance class.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The underlying optimization problem has no solution (e.g. spanning
    /// tree of a disconnected graph).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// Text input (CNF) that could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn size(msg: impl Into<String>) -> Self {
        Error::SizeLimit(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
