use std::fmt;
use std::io;
use std::path::PathBuf;

/// Errors raised outside the numerical core.
#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, source: io::Error },
    /// Malformed input; `line` is 1-based, 0 for command-line values.
    Parse { line: usize, msg: String },
    /// Entries out of order in a file; `line` is 1-based.
    Order { line: usize },
    Core(zrl_core::Error),
}

impl CliError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        CliError::Parse { line, msg: msg.into() }
    }

    /// Process exit code: 2 for malformed input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Parse { line: 0, msg } => write!(f, "parse error: {msg}"),
            CliError::Parse { line, msg } => write!(f, "parse error on line {line}: {msg}"),
            CliError::Order { line } => write!(f, "order error on line {line}: entries must increase strictly"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl From<zrl_core::Error> for CliError {
    fn from(e: zrl_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
