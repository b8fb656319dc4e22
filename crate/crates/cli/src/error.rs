use ep_core::ValidationReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid system:\n{0}")]
    Invalid(ValidationReport),
    #[error("{0}")]
    Core(ep_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl From<ep_core::Error> for CliError {
    fn from(e: ep_core::Error) -> Self {
        match e {
            ep_core::Error::Invalid(r) => CliError::Invalid(r),
            e => CliError::Core(e),
        }
    }
}
