use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = hetmimo::cli::Cli::parse();
    match hetmimo::cli::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
