use std::process::ExitCode;

use aqslab::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            eprintln!("aqslab: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
