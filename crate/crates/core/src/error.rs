use thiserror::Error;

/// Errors raised by the combinatorial routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Structurally invalid input (bad labels, wrong sizes, negative entries).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Text or JSON payload could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// An enumeration would exceed the configured resource cap.
    #[error("resource cap exceeded: {what} needs {needed} candidates, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },

    /// The tree does not arise from the given matching.
    #[error("tree does not arise from this matching: {0}")]
    Mismatch(String),

    /// The operation is not defined for these arguments.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An internal invariant failed; indicates a bug rather than bad input.
    #[error("internal defect: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
