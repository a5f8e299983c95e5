use std::io;
use std::path::Path;

/// Exit 1 for a verification failure, 2 for everything else.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Decode(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("session aborted: {0}")]
    Session(io::Error),
    #[error("{0}")]
    Rejected(String),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn rejected(msg: impl Into<String>) -> Self {
        CliError::Rejected(msg.into())
    }

    pub fn in_file(self, path: &Path) -> Self {
        match self {
            CliError::Decode(msg) => CliError::Decode(format!("{}: {msg}", path.display())),
            other => other,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Rejected(_) => 1,
            _ => 2,
        }
    }
}

impl From<opaque_sig::Error> for CliError {
    fn from(e: opaque_sig::Error) -> Self {
        match e {
            opaque_sig::Error::Refused(_) => CliError::Rejected(e.to_string()),
            opaque_sig::Error::Decode(_) => CliError::Decode(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
