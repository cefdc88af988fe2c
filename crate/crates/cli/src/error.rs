use std::path::Path;

use aesthetic_curves::CurveError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}: parse error at line {line}, column {column}: {msg}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{origin}: field `{field}`: {msg}")]
    Field { origin: String, field: String, msg: String },
    #[error("{origin}: invalid curve: {msg}")]
    Validation { origin: String, msg: String },
    #[error("invalid job configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn field(origin: &str, field: &str, msg: impl Into<String>) -> Self {
        CliError::Field {
            origin: origin.to_string(),
            field: field.to_string(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
