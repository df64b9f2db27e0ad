use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = algebraic_interp::cli::Args::parse();
    let outcome = algebraic_interp::cli::run(&args);
    if !outcome.stdout.is_empty() {
        print!("{}", outcome.stdout);
    }
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.code)
}
