//! `scatlin`: command-line front end for the scatlin toolkit.
//!
//! Every command prints one JSON report (or an aligned table with
//! `--table`). Exit codes: 0 success, 1 a checked assertion failed,
//! 2 bad usage or invalid input.

mod args;
mod commands;
mod input;
mod output;
mod reproduce;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command};

/// Failure modes that map to distinct exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unparsable input or parameters outside a family's domain.
    Usage(String),
    /// Anything the toolkit reports that is not the caller's fault.
    Internal(String),
}

impl From<scatlin_core::Error> for CliError {
    fn from(e: scatlin_core::Error) -> Self {
        use scatlin_core::Error as E;
        match e {
            E::ClassificationGap { .. } | E::NoIrreducibleFound(_) => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// What a command hands back to the report writer.
pub struct Outcome {
    /// Context summary of the field the command ran in.
    pub field: Option<Value>,
    pub result: Value,
    /// False when an assertion of the command failed.
    pub ok: bool,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }

    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Check(a) => commands::check(a),
        Command::EnumerateH(a) => commands::enumerate_h(a),
        Command::Linset(a) => commands::linset(a),
        Command::Intn(a) => commands::intn(a),
        Command::Equiv(a) => commands::equiv(a),
        Command::Mrd(a) => commands::mrd(a),
        Command::Lemmas(a) => commands::lemmas(a),
        Command::Reproduce(a) => reproduce::run(a),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };

    let report = json!({
        "command": cli.command.name(),
        "argv": argv[1..],
        "version": env!("CARGO_PKG_VERSION"),
        "workers": rayon::current_num_threads(),
        "field": outcome.field,
        "ok": outcome.ok,
        "result": outcome.result,
        "timing": { "elapsed_ms": start.elapsed().as_millis() as u64 },
    });
    output::print(&report, cli.table);
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
