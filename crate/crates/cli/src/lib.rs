//! Command-line front end for the `su11` interferometer calculator.
//!
//! Four subcommands: `sensitivity` evaluates one configuration,
//! `sweep` walks one parameter over a grid, `figure` emits one of the five
//! bundled sweep presets, and `oracle-check` cross-validates the closed
//! forms against the number-basis oracle. Everything prints CSV (or JSON
//! where it makes sense) with deterministic 12-significant-digit
//! formatting, so identical invocations produce byte-identical files.

use std::path::PathBuf;

pub mod args;
pub mod config;
pub mod format;
pub mod presets;
mod run;

pub use run::{
    run, DEFAULT_ORACLE_G, DEFAULT_ORACLE_NTH, DEFAULT_ORACLE_PHI, DEFAULT_ORACLE_R, ORACLE_MAX_G,
    ORACLE_MAX_NTH, ORACLE_MAX_R,
};

/// Failure modes, sorted by whose fault they are.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The invocation itself is wrong: missing or conflicting flags,
    /// unknown names, malformed config. Exit code 1.
    #[error("{0}")]
    Usage(String),
    /// The invocation is fine but the numbers are not: domain violations,
    /// blind spots, truncation failures, failed checks. Exit code 2.
    #[error("{0}")]
    Domain(String),
    /// Reading or writing a file failed. Exit code 3.
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<su11::Error> for CliError {
    fn from(err: su11::Error) -> Self {
        CliError::Domain(err.to_string())
    }
}

/// Writes to the path when one is given, otherwise to stdout.
pub(crate) fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
