use std::process::ExitCode;

use clap::Parser;
use fpcf_lab::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match fpcf_lab::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("fpcf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
