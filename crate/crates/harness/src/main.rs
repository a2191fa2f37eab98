use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = xre_harness::cli::Cli::parse();
    let stdout = std::io::stdout();
    match xre_harness::cli::run(cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
