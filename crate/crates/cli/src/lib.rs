//! Command-line front end for the exact verification engine: argument
//! parsing, report assembly, and rendering.

pub mod commands;
pub mod report;

pub use commands::{execute, Cli, Command, Format};
pub use report::{Check, Outcome, Report, Status};

use clap::error::ErrorKind;
use clap::Parser;
use std::ffi::OsString;

/// Parse arguments, run the command, print the report in the requested
/// format, and return the process exit code: 0 when the verdict is pass,
/// 1 when a check failed, 2 on usage errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let report = execute(&cli);
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    report.exit_code()
}
