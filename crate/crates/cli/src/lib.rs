//! Library side of the `hankel` command-line tool.

pub mod args;
pub mod commands;
pub mod manifest;
pub mod output;

use args::{Cli, Command};
use commands::{Outcome, UsageError};

/// Runs a parsed command line and returns the process exit code
/// (0 pass, 1 verification failure, 2 usage or input error).
pub fn run(cli: &Cli) -> u8 {
    let result: Result<Outcome, UsageError> = match &cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Sweep(a) => commands::sweep_cmd(a),
        Command::OracleCheck(a) => commands::oracle_check(a),
        Command::Hankel(a) => commands::hankel(a),
    };
    match result {
        Ok(outcome) => outcome.exit_code(),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
