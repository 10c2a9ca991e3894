use std::fmt;
use std::io;

/// Everything `run` can fail with.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { what: String, source: io::Error },
    Parse { what: String, reason: String },
    Core(mincoupling_core::Error),
}

impl CliError {
    /// Machine-readable name; library failures reuse the library's variant names.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Io { .. } => "IoError",
            CliError::Parse { .. } => "ParseError",
            CliError::Core(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Parse { .. } | CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io { what, source } => write!(f, "{what}: {source}"),
            CliError::Parse { what, reason } => write!(f, "{what}: {reason}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<mincoupling_core::Error> for CliError {
    fn from(e: mincoupling_core::Error) -> Self {
        CliError::Core(e)
    }
}
