use thiserror::Error;

/// Errors raised by constructions and by the input parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Syntax error with a 1-based source line.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A structure failed one of its defining identities.
    #[error("invalid: {0}")]
    Invalid(String),
    /// A mathematical precondition of a construction does not hold.
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    /// A linear system had no solution.
    #[error("no solution: {0}")]
    NoSolution(String),
    /// Something that should be impossible under the checked hypotheses.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Invalid(_) => 2,
            Error::Hypothesis(_) | Error::NoSolution(_) => 1,
            Error::Internal(_) => 3,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Error {
        Error::Invalid(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Error {
        Error::Hypothesis(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
