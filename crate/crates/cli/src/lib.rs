//! `dfnt` command-line front end.
//!
//! Exit codes: `0` success, `1` a verification or `--strict` check failed,
//! `2` invalid arguments or input data, `3` I/O failure.

pub mod args;
pub mod commands;
pub mod io;
pub mod verify;

use std::fmt;

pub use args::Cli;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, sizes or unparsable input data.
    Usage(String),
    /// Reading or writing a file failed.
    Io(String),
    /// A check ran and did not pass.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) | CliError::Failed(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<dfnt::DfntError> for CliError {
    fn from(err: dfnt::DfntError) -> Self {
        CliError::Usage(err.to_string())
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    commands::dispatch(cli)
}
