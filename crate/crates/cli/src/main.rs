mod args;
mod commands;
mod machine;
mod manifest;
mod provenance;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, Outcome, EXIT_USAGE};

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Compile(a) => commands::cmd_compile(a),
        Command::Macaulay(a) => commands::cmd_macaulay(a),
        Command::Det(a) => commands::cmd_det(a),
        Command::ResultantTest(a) => commands::cmd_resultant_test(a),
        Command::Verify(a) => commands::cmd_verify(a),
        Command::Succinct(a) => commands::cmd_succinct(a),
        Command::Unrank(a) => commands::cmd_unrank(a),
        Command::Rank(a) => commands::cmd_rank(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors; everything else is usage.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code() as u8),
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code as u8)
        }
    }
}
