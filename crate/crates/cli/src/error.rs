use thiserror::Error;

/// Exit code for input errors (malformed JSON, schema and width problems).
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Algebra(#[from] oigb_core::Error),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn schema(path: &str, message: impl Into<String>) -> Self {
        let path = if path.is_empty() { "." } else { path };
        CliError::Schema {
            path: path.to_string(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT
    }
}
