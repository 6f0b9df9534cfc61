use thiserror::Error;

/// CLI failures, each mapped to a fixed process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numeric(#[from] nmwit_core::Error),
    #[error("degenerate minimum eigenvalue of the SPA state at t = {t}: {source}")]
    Degenerate { t: f64, source: nmwit_core::Error },
    #[error("map point (gamma1 = {gamma1}, gamma2 = {gamma2}) is not positive")]
    NotPositive { gamma1: f64, gamma2: f64 },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Degenerate { .. } => 4,
            CliError::NotPositive { .. } => 5,
            CliError::Io(_) => 1,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}
