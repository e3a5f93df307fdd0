use std::path::PathBuf;

use thiserror::Error;

/// Everything that stops a diagram file from loading. Each variant is a
/// distinct error class; all of them map to exit status 2.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("schema error at line {line}, column {column}: {message}")]
    Schema { line: usize, column: usize, message: String },

    #[error("unsupported format tag {found:?}, expected {expected:?}")]
    Format { found: String, expected: &'static str },

    #[error("object {object:?}: invalid rational {entry:?} at {field}")]
    InvalidRational { object: String, field: String, entry: String },

    #[error("object {object:?}: {field} refers to undeclared object {name:?}")]
    DanglingReference { object: String, field: String, name: String },

    #[error("object {object:?}: {field} refers to {name:?}, which is a {found}, not a {expected}")]
    WrongKind {
        object: String,
        field: String,
        name: String,
        expected: &'static str,
        found: &'static str,
    },

    #[error("object {object:?}: dimension mismatch: {detail}")]
    DimensionMismatch { object: String, detail: String },

    #[error("object {0:?} is declared more than once")]
    DuplicateName(String),

    #[error("object {object:?}: {source}")]
    Invalid {
        object: String,
        #[source]
        source: gysin::Error,
    },

    #[error("check {index}: {detail}")]
    Check { index: usize, detail: String },
}

impl LoadError {
    /// A short stable identifier for the error class.
    pub fn class(&self) -> &'static str {
        match self {
            LoadError::Io { .. } => "io",
            LoadError::Syntax { .. } => "syntax",
            LoadError::Schema { .. } => "schema",
            LoadError::Format { .. } => "format",
            LoadError::InvalidRational { .. } => "invalid-rational",
            LoadError::DanglingReference { .. } => "dangling-reference",
            LoadError::WrongKind { .. } => "wrong-kind",
            LoadError::DimensionMismatch { .. } => "dimension-mismatch",
            LoadError::DuplicateName(_) => "duplicate-name",
            LoadError::Invalid { .. } => "invalid-object",
            LoadError::Check { .. } => "invalid-check",
        }
    }

    /// Wraps an engine error raised while building `object`; shape errors
    /// become dimension mismatches.
    pub(crate) fn engine(object: &str, e: gysin::Error) -> LoadError {
        match e {
            gysin::Error::Shape(detail) | gysin::Error::Structural(detail) => LoadError::DimensionMismatch {
                object: object.into(),
                detail,
            },
            source => LoadError::Invalid {
                object: object.into(),
                source,
            },
        }
    }
}

impl From<serde_json::Error> for LoadError {
    fn from(e: serde_json::Error) -> Self {
        let (line, column) = (e.line(), e.column());
        // serde_json appends " at line N column M" to its messages.
        let message = e.to_string();
        let message = message
            .rsplit_once(" at line ")
            .map_or(message.as_str(), |(m, _)| m)
            .to_string();
        match e.classify() {
            serde_json::error::Category::Data => LoadError::Schema { line, column, message },
            _ => LoadError::Syntax { line, column, message },
        }
    }
}
