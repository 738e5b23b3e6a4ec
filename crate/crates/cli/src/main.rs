use std::process::ExitCode;

use clap::Parser;
use diracline::config::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match diracline::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("diracline: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
