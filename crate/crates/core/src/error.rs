use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (bad permutation, degree mismatch, non-normal subgroup, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A configured size bound was exceeded.
    #[error("capacity exceeded: {what} has size {size}, bound is {bound}")]
    Capacity {
        what: &'static str,
        size: u64,
        bound: u64,
    },

    /// Text parse failure with a 1-based line number.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A corpus entry whose generators do not produce the declared order.
    #[error("corpus entry '{name}': declared order {expected}, generators give {actual}")]
    OrderMismatch {
        name: String,
        expected: u64,
        actual: u64,
    },

    /// Two characterizations of the same object disagreed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
