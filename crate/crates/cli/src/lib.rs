//! The `shl` command line: argument parsing, suite dispatch and report
//! output. The binary is a thin wrapper around [`parse_args`],
//! [`run_suite`] and [`emit`].

pub mod args;
pub mod defaults;
pub mod run;

use std::fs;
use std::io::Write;

pub use args::{parse_args, CliError, Output, ParamSource, RunConfig, Suite};
pub use run::run_suite;
use shl_core::Report;

/// Sizes the global worker pool from `SHL_THREADS`, if set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SHL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("SHL_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

/// One human-readable line for the terminal.
pub fn summary(report: &Report) -> String {
    let verdict = format!("{:?}", report.verdict).to_lowercase();
    let mut line = format!("{}: {verdict}", report.suite);
    match report.suite.as_str() {
        "eval-f" => {
            if let Some(v) = &report.lhs {
                let lambda = report.params.get("lambda").map(String::as_str).unwrap_or("?");
                line = format!("F{lambda} = {}", v.exact);
            }
        }
        "eval-pf" => {
            if let Some(v) = &report.rhs {
                line = format!("Pf = {}", v.exact);
            }
        }
        _ => {
            if let Some(r) = &report.residual {
                line.push_str(&format!(", residual {}", r.approx.map_or_else(|| r.exact.to_string(), |x| format!("{x:.3e}"))));
            }
        }
    }
    if let Some(m) = &report.message {
        line.push_str(&format!(" ({m})"));
    }
    line
}

/// Writes the JSON report to the configured output.
pub fn emit(report: &Report, output: &Output) -> std::io::Result<()> {
    let json = report.to_json();
    match output {
        Output::Stdout => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{json}")
        }
        Output::File(path) => fs::write(path, json + "\n"),
    }
}
