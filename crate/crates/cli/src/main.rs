use std::io::Write;
use std::process::ExitCode;

use adomian_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = run(cli, &mut out, &mut std::io::stderr());
    let _ = out.flush();
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
