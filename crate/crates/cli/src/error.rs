use thiserror::Error;

/// Failures surfaced by the command-line tool, each mapped to a stable exit
/// code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Precondition(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl From<dequant::Error> for CliError {
    fn from(e: dequant::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("invalid JSON: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub(crate) fn write_file(path: &std::path::Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn read_file(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
