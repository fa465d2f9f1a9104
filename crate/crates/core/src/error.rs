use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed user input: graphs, words, models, files.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    /// A documented precondition of an operation does not hold.
    #[error("contract violated: {0}")]
    Contract(String),

    /// A resource budget ran out before the computation finished.
    #[error("{what} budget of {limit} exceeded (partial count {partial})")]
    Budget {
        what: &'static str,
        limit: usize,
        partial: usize,
    },

    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
