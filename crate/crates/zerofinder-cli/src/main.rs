//! `zerofinder` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failed, 2 unsupported parameters or regime,
//! 3 evaluator or solver failure, 4 too few iterates for an order estimate.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use zerofinder::Error;

use args::{Cli, Command};

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unsupported(_) | Error::UnsupportedParameter(_) | Error::InvalidInterval { .. } => 2,
        Error::InsufficientHistory { .. } => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Zeros(a) => commands::zeros(a, &mut out),
        Command::Verify(a) => commands::verify(a, &mut out),
        Command::Bench(a) => commands::bench(a, &mut out),
        Command::Order(a) => commands::order(a, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("zerofinder: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
