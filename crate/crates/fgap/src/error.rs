use std::path::PathBuf;

use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("ring fails validation:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
    #[error("{0}")]
    Input(String),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] fgap_core::Error),
}

impl CliError {
    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        CliError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input(message.into())
    }

    /// 2 for precision ambiguities, 1 for every other failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(fgap_core::Error::Ambiguity(_) | fgap_core::Error::Precision(_)) => 2,
            _ => 1,
        }
    }
}
