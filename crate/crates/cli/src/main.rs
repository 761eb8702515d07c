//! `exppoly` command-line frontend.

mod args;
mod commands;
mod parse;
mod report;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match commands::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut out = io::stdout().lock();
    if let Err(e) = report.write(cli.format, &mut out).and_then(|_| out.flush().map_err(Into::into)) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
