use std::process::ExitCode;

use clap::Parser;
use stringy_cli::run::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    ExitCode::from(execute(&cli, &mut stdout.lock()))
}
