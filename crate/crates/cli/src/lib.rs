//! Command-line front end. Every command returns an [`Outcome`] holding its
//! output and exit code, so the binary only prints and exits.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or precondition
//! error.

pub mod args;
pub mod commands;
pub mod fields;
pub mod store;

use thiserror::Error;

pub use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn precondition(e: impl std::fmt::Display) -> Self {
        Self::Precondition(e.to_string())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    pub fn new(stdout: String, passed: bool) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: if passed { EXIT_OK } else { EXIT_FAILED },
        }
    }

    pub fn with_stderr(mut self, stderr: String) -> Self {
        self.stderr = stderr;
        self
    }

    pub fn error(e: &CliError) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_USAGE,
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Lift(a) => commands::lift::run(&a),
        Command::Construct(a) => commands::construct::run(&a),
        Command::Verify(a) => commands::verify::run(&a),
        Command::Scan(a) => commands::scan::run(&a),
        Command::Reproduce(a) => commands::reproduce::run(&a),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

/// Parses `argv` (program name first) and runs it; usage errors come back as
/// exit code 2 with clap's message.
pub fn run_args<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::new(text, true)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}
