use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use landin_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{}", e.payload());
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.document),
        None => std::io::stdout().write_all(outcome.document.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!(
            "{}",
            serde_json::json!({ "error": "E_IO", "message": e.to_string() })
        );
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
