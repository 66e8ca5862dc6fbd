//! The `nci` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

mod args;
mod commands;
mod error;

pub use args::Cli;
pub use error::CliError;

/// Text and JSON renderings of a command's result, plus its exit code.
pub(crate) struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub code: i32,
}

impl Output {
    pub fn new(text: String, json: serde_json::Value) -> Output {
        Output { text, json, code: 0 }
    }
}

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DOMAIN: i32 = 65;

/// Runs the command line and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json = cli.json;
    match commands::dispatch(cli.command) {
        Ok(o) => {
            let written = if json {
                serde_json::to_string_pretty(&o.json).map(|s| writeln!(out, "{s}"))
            } else {
                Ok(write!(out, "{}", o.text))
            };
            match written {
                Ok(Ok(())) => o.code,
                _ => EXIT_DOMAIN,
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Domain { name, message }) => {
            if json {
                let v = serde_json::json!({ "error": name, "message": message });
                let _ = writeln!(out, "{v}");
            }
            let _ = writeln!(err, "error: {name}: {message}");
            EXIT_DOMAIN
        }
    }
}
