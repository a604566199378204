//! `diffset` command-line front end.
//!
//! Exit status is 0 on success, 1 on domain errors (including exhausted
//! budgets and verification counterexamples) and 2 on usage errors.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use commands::{Cli, Failure};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match commands::run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(value)) => {
            eprintln!("{}", serde_json::to_string(&value).unwrap_or_default());
            ExitCode::from(1)
        }
    }
}
