//! Library surface of the `tfp` command-line tool: the instance file format
//! and the command implementations, exposed so the test suites can drive
//! them directly.

pub mod commands;
pub mod format;

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Parse { line: usize, col: usize, msg: String },
    Core(tfp_core::Error),
    Io(String),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { line, col, msg } => write!(f, "parse error at {line}:{col}: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Usage(e) => write!(f, "usage error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tfp_core::Error> for CliError {
    fn from(e: tfp_core::Error) -> Self {
        CliError::Core(e)
    }
}
