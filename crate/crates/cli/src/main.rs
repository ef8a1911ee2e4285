use std::process::ExitCode;

use clap::Parser;
use discorr_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let code = match execute(&cli, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            let record = e.record();
            eprintln!("{}", serde_json::to_string(&record).unwrap_or_else(|_| record.message.clone()));
            record.exit_code
        }
    };
    ExitCode::from(code as u8)
}
