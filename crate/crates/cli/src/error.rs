use std::fmt;
use std::path::PathBuf;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const PRECONDITION: i32 = 2;
    pub const CHECK_FAILED: i32 = 3;
    pub const CAP_EXCEEDED: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    /// A malformed argument value.
    Usage(String),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Core(popdiff::Error),
    /// Checks whose failures were already reported.
    ChecksFailed {
        failed: usize,
        total: usize,
    },
    Csv(csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Csv(_) => exit::USAGE,
            CliError::ChecksFailed { .. } => exit::CHECK_FAILED,
            CliError::Core(e) => match e {
                popdiff::Error::CapExceeded { .. } => exit::CAP_EXCEEDED,
                popdiff::Error::Parse { .. } => exit::USAGE,
                popdiff::Error::Defect(_) => exit::CHECK_FAILED,
                _ => exit::PRECONDITION,
            },
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::ChecksFailed { failed, total } => write!(f, "{failed} of {total} checks failed"),
            CliError::Csv(e) => write!(f, "csv: {e}"),
        }
    }
}

impl From<popdiff::Error> for CliError {
    fn from(e: popdiff::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
