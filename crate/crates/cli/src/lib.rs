//! Command-line front end for `clifford-mackey`.
//!
//! [`run`] parses arguments, executes one subcommand and writes either a
//! plain-text table or JSON. Exit codes: 0 on success, 1 on a domain error
//! or a failed check, 2 on a usage error (including malformed element or
//! irrep syntax).

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use clifford_mackey::Error;

pub mod args;
pub mod commands;
pub mod verify;

pub use args::{Cli, Command, Format, Level};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::SubsetOutOfRange { .. } | Error::InvalidIrrep { .. } => {
            EXIT_USAGE
        }
        _ => EXIT_DOMAIN,
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match commands::execute(&cli.command, cli.seed) {
        Ok(rendered) => {
            let written = match cli.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&rendered.json).expect("JSON value")
                ),
                Format::Table => write!(out, "{}", rendered.table),
            };
            if written.is_err() {
                return EXIT_DOMAIN;
            }
            if rendered.success {
                EXIT_OK
            } else {
                EXIT_DOMAIN
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
