use thiserror::Error;

/// Errors raised by the simulator library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The configuration text is not valid key-value syntax.
    #[error("config parse error: {0}")]
    Parse(String),

    /// A configuration key is not part of the schema.
    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    /// A configuration key has a value of the wrong type.
    #[error("config key `{key}`: {message}")]
    BadValue { key: String, message: String },

    /// A model parameter violates its domain.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A sweep or topology request that cannot be evaluated.
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter { name, value, reason }
    }

    /// Name of the offending key or parameter, when there is one.
    pub fn key(&self) -> Option<&str> {
        match self {
            Error::UnknownKey(k) => Some(k),
            Error::BadValue { key, .. } => Some(key),
            Error::InvalidParameter { name, .. } => Some(name),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
