use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input: unknown letters, out-of-range states,
    /// mismatched alphabets, bad parameters.
    #[error("invalid input: {0}")]
    Input(String),

    /// A configured size cap was exceeded. `reached` is how far the computation
    /// got before giving up.
    #[error("{what} exceeded cap of {cap} (reached {reached})")]
    Resource {
        what: &'static str,
        cap: usize,
        reached: usize,
    },

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
