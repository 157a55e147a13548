use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A schema or validation failure at a JSON pointer into the job document.
    #[error("{pointer}: {message}")]
    Input { pointer: String, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Compute(#[from] hhadic::Error),
}

impl CliError {
    pub fn input(pointer: &str, message: impl Into<String>) -> CliError {
        CliError::Input { pointer: pointer.to_string(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        1
    }
}
