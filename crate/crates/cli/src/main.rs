use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use toricox_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = execute(&cli.command);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
