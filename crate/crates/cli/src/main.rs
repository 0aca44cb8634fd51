use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hkeq_cli::{run, Command, RunConfig, EXIT_MALFORMED};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(err) => {
            let _ = err.print();
            // help and version requests are not errors
            return ExitCode::from(if err.use_stderr() { EXIT_MALFORMED as u8 } else { 0 });
        }
    };
    let contents = match config.command.input_path() {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(c) => c,
            Err(err) => {
                eprintln!("error: cannot read {}: {err}", path.display());
                return ExitCode::from(EXIT_MALFORMED as u8);
            }
        },
        None => String::new(),
    };
    let outcome = run(&config, &contents);
    if let (
        Command::Koszul {
            output: Some(path), ..
        },
        Some(artifact),
    ) = (&config.command, &outcome.artifact)
    {
        if let Err(err) = std::fs::write(path, artifact) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(EXIT_MALFORMED as u8);
        }
    }
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit_code as u8)
}
