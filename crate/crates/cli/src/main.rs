use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lieflag_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect();
    let outcome = run(&cli, echo);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
