use std::process::ExitCode;

use clap::Parser;
use packcover_cli::args::Cli;
use packcover_cli::run::dispatch;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            for line in &out.stdout {
                println!("{line}");
            }
            for note in &out.notes {
                eprintln!("{note}");
            }
            if let (Some(path), Some(doc)) = (&cli.json, &out.json) {
                let text = serde_json::to_string_pretty(doc).expect("json serializes");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
