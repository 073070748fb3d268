use thiserror::Error;

/// Every failure the engine can report.
///
/// The variants map onto process exit codes in the command line tool:
/// capacity problems, bad input, and broken internal agreement are kept apart
/// so a caller can tell "too big" from "wrong" from "bug".
#[derive(Debug, Error)]
pub enum Error {
    /// A table or map violates a structural invariant (Latin square, identity, range).
    #[error("structural error: {0}")]
    Structural(String),

    /// A configured size bound was exceeded.
    #[error("capacity exceeded: {what} is {got}, limit {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// An operation's precondition does not hold for its inputs.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A name (group, automorphism) could not be resolved.
    #[error("unknown name: {0}")]
    Lookup(String),

    /// Malformed user input.
    #[error("bad input: {0}")]
    Input(String),

    /// Two independent deciders reached different verdicts.
    #[error("deciders disagree: {0}")]
    Disagreement(String),

    /// Two computations that must coincide did not.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn capacity(what: &'static str, got: usize, limit: usize) -> Self {
        Error::Capacity { what, got, limit }
    }
}
