use std::process::ExitCode;

use clap::Parser;
use energy_pile::cli::{self, Cli};

fn main() -> ExitCode {
    cli::run(Cli::parse())
}
