use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod error;
mod output;
mod svg;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    if let Ok(t) = std::env::var("HONEYLAB_THREADS") {
        match t.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: HONEYLAB_THREADS must be a positive integer, got {t:?}");
                return ExitCode::from(2);
            }
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
