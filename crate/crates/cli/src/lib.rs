//! Library side of the `dmxyz` binary, callable with in-memory writers.

mod args;
mod commands;
mod error;
pub mod format;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::{merge_config, Cli, Command};
pub use error::{
    CliError, EXIT_FAILURE, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_OVERFLOW, EXIT_REGRESSION, EXIT_USAGE,
};

/// Parses `argv` (program name first), runs the command and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
pub fn run(argv: Vec<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let argv = match merge_config(argv) {
        Ok(a) => a,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not errors and go to stdout.
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match commands::dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
