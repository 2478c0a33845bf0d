use std::process::ExitCode;

use clap::Parser;

use ambig::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    if let Some(msg) = &out.diagnostic {
        eprintln!("ambig: {msg}");
    }
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("ambig: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(out.status.exit_code() as u8)
}
