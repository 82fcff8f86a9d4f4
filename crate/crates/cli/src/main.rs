use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

mod args;
mod commands;

use args::{Cli, Command};
use commands::CliError;

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Spectrum(a) => commands::cmd_spectrum(&a),
        Command::Harmonic(a) => commands::cmd_harmonic(&a),
        Command::OperatorDump(a) => commands::cmd_operator_dump(&a),
        Command::Sweep(a) => commands::cmd_sweep(&a),
        Command::Selftest(a) => commands::cmd_selftest(&a),
        Command::Modes(a) => commands::cmd_modes(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
