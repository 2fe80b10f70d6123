//! Batch front end: each subcommand runs one computation and writes JSON or
//! CSV to stdout, preceded by the fully resolved configuration.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let record = serde_json::json!({
                "error": {
                    "module": cli.command.module(),
                    "kind": e.kind(),
                    "message": e.to_string(),
                }
            });
            eprintln!("{record}");
            ExitCode::from(1)
        }
    }
}
