use std::fmt;

use bonafide::Error;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable input or bad parameters: exit 2.
    Parse(String),
    Usage(String),
    /// Wrong dimension or not symmetric: exit 3.
    Shape(String),
    /// Positivity precondition of the requested operation: exit 4.
    Positivity(String),
    Io {
        path: String,
        source: std::io::Error,
    },
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Shape(_) => 3,
            CliError::Positivity(_) => 4,
            CliError::Io { .. } | CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Usage(m) => write!(f, "invalid argument: {m}"),
            CliError::Shape(m) => write!(f, "shape error: {m}"),
            CliError::Positivity(m) => write!(f, "positivity error: {m}"),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ElementCount { .. } | Error::Dimension(_) | Error::NotSymmetric { .. } => {
                CliError::Shape(e.to_string())
            }
            Error::NotPositiveDefinite { .. } | Error::BlockNotPositiveDefinite { .. } => {
                CliError::Positivity(e.to_string())
            }
            Error::InvalidParameter(_) => CliError::Usage(e.to_string()),
            Error::NonFinite { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}
