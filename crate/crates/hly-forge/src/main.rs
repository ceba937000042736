use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hly_forge::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if let Some(msg) = &outcome.message {
        eprintln!("hly-forge: {msg}");
    }
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(outcome.stdout.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code)
}
