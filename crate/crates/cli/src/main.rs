use std::process::ExitCode;
use std::time::Instant;

use charcycle_cli::report::error_json;
use charcycle_cli::{execute, Cli, OutputFormat};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = execute(&cli);
    let elapsed = start.elapsed().as_millis();
    let (body, code) = match &outcome {
        Ok(r) => match cli.output {
            OutputFormat::Text => (r.to_text(Some(elapsed)), 0),
            OutputFormat::Structured => (r.to_json(), 0),
        },
        Err(e) => {
            eprintln!("error: {e}");
            let body = match cli.output {
                OutputFormat::Structured => error_json(cli.command.name(), e),
                OutputFormat::Text => String::new(),
            };
            (body, e.exit_code())
        }
    };
    if !body.is_empty() {
        match &cli.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            None => print!("{body}"),
        }
    }
    ExitCode::from(code as u8)
}
