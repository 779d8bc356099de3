use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element does not belong to {0}")]
    GroupMismatch(String),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("{what} too large: {size} exceeds cap {cap}")]
    TooLarge {
        what: String,
        size: String,
        cap: String,
    },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("automorphism closure exceeded cap {cap} (reached {reached} elements)")]
    ClosureExceeded { reached: usize, cap: usize },

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    /// The instance does not satisfy CR clause (d) where a computation relies on it.
    #[error("instance violates CR clause (d): {0}")]
    ClauseDViolation(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn too_large(
        what: impl Into<String>,
        size: impl ToString,
        cap: impl ToString,
    ) -> Self {
        Error::TooLarge {
            what: what.into(),
            size: size.to_string(),
            cap: cap.to_string(),
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
