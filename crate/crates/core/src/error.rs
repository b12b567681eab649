use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed data: bad JSON, out-of-range vertices, mismatched variable counts.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Well-formed input that falls outside an operation's stated range.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph is not connected")]
    Disconnected,

    /// The colon ideal at position `index` of the ordered generators is not generated by variables.
    #[error("no linear quotients: colon ideal at generator #{index} ({generator}) is {colon}")]
    NotLinearQuotients {
        index: usize,
        generator: String,
        colon: String,
    },

    #[error("lcm lattice has more than {cap} elements; raise the oracle cap to continue")]
    LatticeCap { cap: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
