//! Front end for the `adomian` library: `gen`, `check` and `solve`.

pub mod args;
pub mod commands;
pub mod components_file;
pub mod error;
pub mod report;

use std::io::Write;

pub use args::Cli;
pub use error::{exit, CliError};

/// Run a parsed command, writing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        args::Command::Gen(a) => commands::gen::run(&a, out),
        args::Command::Check(a) => commands::check::run(&a, out),
        args::Command::Solve(a) => commands::solve::run(&a, out),
    };
    match result {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
