use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A specification error at a 1-based line and column.
    #[error("{code} at {line}:{column}: {message}")]
    Spec {
        code: &'static str,
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Lib(#[from] landin::Error),

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        CliError::Spec {
            code: "E_PARSE",
            line,
            column,
            message: message.into(),
        }
    }

    pub fn symbol(at: (usize, usize), message: impl Into<String>) -> Self {
        CliError::Spec {
            code: "E_SYMBOL",
            line: at.0,
            column: at.1,
            message: message.into(),
        }
    }

    pub fn depth(at: (usize, usize), message: impl Into<String>) -> Self {
        CliError::Spec {
            code: "E_DEPTH",
            line: at.0,
            column: at.1,
            message: message.into(),
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Spec { code, .. } => code,
            CliError::Lib(e) => e.code(),
            CliError::Usage(_) => "E_USAGE",
            CliError::Io { .. } => "E_IO",
            CliError::Json(_) => "E_PARSE",
        }
    }

    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            CliError::Spec { line, column, .. } => Some((*line, *column)),
            _ => None,
        }
    }

    /// The payload written to the diagnostic stream.
    pub fn payload(&self) -> Value {
        let mut v = json!({ "error": self.code(), "message": self.to_string() });
        if let Some((line, column)) = self.position() {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        v
    }
}
