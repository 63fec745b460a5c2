mod args;
mod commands;
mod error;
mod load;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                error::exit::PARSE
            } else {
                error::exit::OK
            });
        }
    };
    let result = match &cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::Invariants(a) => commands::invariants(a),
        Command::Groebner(a) => commands::groebner(a),
        Command::Simulate(a) => commands::simulate_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::from(error::exit::OK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
