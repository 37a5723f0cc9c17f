use std::process::ExitCode;

use clap::Parser;
use hankel_cli::args::Cli;

fn main() -> ExitCode {
    ExitCode::from(hankel_cli::run(&Cli::parse()))
}
