//! The `saw-forge` command line.
//!
//! Every subcommand writes one JSON report (schema `saw-forge/1`) whose
//! numbers are all decimal strings. Exit status: 0 when every requested
//! check passes, 1 when a check fails or a file cannot be written, 2 for
//! usage and input errors, 3 when a resource bound refuses the work.

mod args;
mod commands;
mod report;
mod verify;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

pub use args::Cli;
pub use report::{stringify_numbers, SCHEMA};

/// Why a run did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(String),
    Resource(String),
    Io(String),
    Check(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Check(_) | Failure::Io(_) => 1,
            Failure::Usage(_) | Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Input(_) => "input",
            Failure::Resource(_) => "resource",
            Failure::Io(_) => "io",
            Failure::Check(_) => "check",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Resource(m) | Failure::Io(m) | Failure::Check(m) => m,
        }
    }
}

impl From<saw_forge::Error> for Failure {
    fn from(e: saw_forge::Error) -> Failure {
        match e {
            saw_forge::Error::Resource(_) => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit status. A failing run ends with a one-line JSON trailer on
/// stderr naming the first failure.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let outcome = match cli.threads {
        Some(0) => Err(Failure::Usage("--threads must be positive".into())),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli, &echo)),
            Err(e) => Err(Failure::Resource(e.to_string())),
        },
        None => commands::dispatch(&cli, &echo),
    };
    match outcome {
        Ok(()) => 0,
        Err(f) => {
            let trailer = json!({
                "schema": SCHEMA,
                "exit": f.exit_code().to_string(),
                "kind": f.kind(),
                "first_failure": f.message(),
            });
            eprintln!("{trailer}");
            f.exit_code()
        }
    }
}
