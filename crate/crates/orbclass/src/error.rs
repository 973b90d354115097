use orbclass_core::apps::AppError;
use orbclass_core::orbit::OrbitError;
use orbclass_core::torus::TorusError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    /// Malformed JSON or a schema violation; `path` points at the field.
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("{0}")]
    Validation(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema { path: path.into(), message: message.into() }
    }

    /// 1 for bad input, 2 for a failed internal assertion.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Schema { .. } => "schema",
            CliError::Validation(_) => "validation",
            CliError::Internal(_) => "internal",
        }
    }
}

fn classify(internal: bool, message: String) -> CliError {
    if internal {
        CliError::Internal(message)
    } else {
        CliError::Validation(message)
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        classify(e.is_internal(), e.to_string())
    }
}

impl From<AppError> for CliError {
    fn from(e: AppError) -> Self {
        classify(e.is_internal(), e.to_string())
    }
}

impl From<TorusError> for CliError {
    fn from(e: TorusError) -> Self {
        classify(e.is_internal(), e.to_string())
    }
}
