use std::path::PathBuf;

use syntaxpoly::ingest::IngestError;
use syntaxpoly::matrices::MatrixError;
use syntaxpoly::polynomial::PolyError;
use syntaxpoly::typology::TypologyError;
use thiserror::Error;

/// Failure of a command; the variant decides the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad or incomplete input: exit code 1.
    #[error("{0}")]
    Input(String),
    /// A result failed a post-condition check: exit code 2.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    pub fn io(path: impl Into<PathBuf>, e: std::io::Error) -> Self {
        CliError::Input(format!("{}: {e}", path.into().display()))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Fails with [`CliError::Internal`] unless `cond` holds.
pub fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Internal(what()))
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TypologyError> for CliError {
    fn from(e: TypologyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(format!("JSON serialization failed: {e}"))
    }
}
