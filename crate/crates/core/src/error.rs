use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("capacity exceeded: {what} (bound {bound})")]
    Capacity { what: String, bound: u64 },
    #[error("degenerate form: {0}")]
    Degenerate(String),
    #[error("modularity violation: {0}")]
    ModularityViolation(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Unsupported(_) => "unsupported",
            Error::Arithmetic(_) => "arithmetic",
            Error::Capacity { .. } => "capacity",
            Error::Degenerate(_) => "degenerate",
            Error::ModularityViolation(_) => "modularity_violation",
            Error::Assertion(_) => "assertion",
            Error::Parse(_) => "parse",
        }
    }

    /// The message without the class prefix.
    pub fn message(&self) -> String {
        match self {
            Error::InvalidArgument(m)
            | Error::Unsupported(m)
            | Error::Arithmetic(m)
            | Error::Degenerate(m)
            | Error::ModularityViolation(m)
            | Error::Assertion(m)
            | Error::Parse(m) => m.clone(),
            Error::Capacity { what, bound } => format!("{what} (bound {bound})"),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn capacity(what: impl Into<String>, bound: u64) -> Self {
        Error::Capacity { what: what.into(), bound }
    }
}
