use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use umbral_cli::{apply_memo_cap, run, Cli, CliError, EXIT_INTERNAL, MEMO_CAP_VAR};

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::internal(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::internal(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = apply_memo_cap(std::env::var(MEMO_CAP_VAR).ok().as_deref())
        .and_then(|_| run(&cli))
        .and_then(|outcome| emit(&cli, &outcome.stdout).map(|_| outcome.code));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code().clamp(EXIT_INTERNAL, 255) as u8)
        }
    }
}
