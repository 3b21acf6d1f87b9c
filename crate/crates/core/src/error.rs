use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller supplied something outside the operation's domain.
    #[error("invalid input: {0}")]
    Input(String),

    /// An exact computation was refused because the instance exceeds a guard.
    #[error("{what} = {value} exceeds the guard of {guard} (raise it with {flag})")]
    Capacity {
        what: &'static str,
        value: usize,
        guard: usize,
        flag: &'static str,
    },

    /// A documented precondition on structured input does not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A structural guarantee failed at runtime. The message carries the witness.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn capacity(what: &'static str, value: usize, guard: usize, flag: &'static str) -> Self {
        Error::Capacity {
            what,
            value,
            guard,
            flag,
        }
    }
}
