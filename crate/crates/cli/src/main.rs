//! `ptwell`: spectra, level counts, critical couplings and curve data for
//! the PT-symmetric square well with a shifted matching point.
//!
//! Usage:
//!   ptwell spectrum --Z 1 --omega 0.1
//!   ptwell complex --Z 1 --omega 0.1 --window 2000,4000,-200,200
//!   ptwell critical --omega 0 --n 2
//!   ptwell curves --family intersection --omega 0.06 --Z 1 --format csv
//!
//! Exit status: 0 on success, 2 for invalid flags, 3 for solver errors,
//! 4 for io errors. `PTWELL_LOG` sets the log level.

// `!(x > 0.0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod config;
mod curves;
mod error;
mod numfmt;
mod report;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PTWELL_LOG", "error")).init();
    let argv = match config::expand(std::env::args_os().collect()) {
        Ok(argv) => argv,
        Err(e) => return fail(&e),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run::run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(e: &error::CliError) -> ExitCode {
    eprintln!("ptwell: {e}");
    ExitCode::from(e.exit_code())
}
