//! Command line front end: the fan file format and the report commands.

pub mod commands;
pub mod fanfile;

pub use commands::{execute, run, Cli, CliError, Command, Outcome, Report};
pub use fanfile::{parse_fan_file, render_fan, FanFileError};
