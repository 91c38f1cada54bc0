use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qeuclid_cli::{run, Cli};

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stdout.flush();
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
