use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("invalid argument: {0}")]
    Parse(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Lib(#[from] honeylab::Error),
}
