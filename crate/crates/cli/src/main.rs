use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use dunkl_cli::args::{Cli, Command};
use dunkl_cli::{commands, EXIT_INVALID};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Verify(a) => commands::verify(a),
        Command::Construct(a) => commands::construct(a),
        Command::Moments(a) => commands::moments(a),
    };
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_INVALID as u8);
            }
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
