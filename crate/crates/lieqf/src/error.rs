//! Crate-wide error type.
//!
//! Three categories matter to callers: malformed input, a violated
//! precondition (caller handed a non-Lie table to an operation that assumes
//! one), and a mathematical verification that came out false. The CLI maps
//! input errors to exit code 2 and everything else to exit code 1.

#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }

    /// True for malformed-input errors (CLI exit code 2); false for
    /// mathematical failures (exit code 1).
    pub fn is_input(&self) -> bool {
        matches!(self, Error::Input(_))
    }
}
