use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The double-precision fractional part would be meaningless.
    #[error("precision error: |log_b x| = {0:e} exceeds 2^52")]
    Precision(f64),

    #[error("capacity exceeded: requested {requested}, limit {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error("unsupported family `{family}` for {operation}")]
    UnsupportedFamily {
        family: &'static str,
        operation: &'static str,
    },

    /// Invalid scenario document. `key` names the offending field.
    #[error("configuration error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }
}
