//! Command-line front end for the `twomode` toolkit.
//!
//! Exit codes: 0 success, 1 internal failure, 2 unphysical matrix,
//! 3 malformed file, 4 out-of-range arguments, 5 verification breach.

pub mod args;
pub mod commands;
pub mod covfile;
pub mod error;
pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::error::exit;

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::OUT_OF_RANGE } else { exit::OK });
        }
    };
    let mut stdout = std::io::stdout().lock();
    let code = match commands::execute(cli.command, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("twomode: {e}");
            e.code()
        }
    };
    let _ = stdout.flush();
    ExitCode::from(code)
}
