//! `splab` command-line driver.

mod args;
mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::output::UsageError;

fn main() -> ExitCode {
    let raw: Vec<std::ffi::OsString> = std::env::args_os().collect();
    let expanded = match config::expand(raw) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(expanded);
    let result = match cli.command {
        Command::Ham(a) => commands::ham::run(a),
        Command::Glm(a) => commands::glm::run(a),
        Command::Family(a) => commands::family::run(a),
        Command::Count(a) => commands::count::run(a),
        Command::Dispersion(a) => commands::dispersion::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
