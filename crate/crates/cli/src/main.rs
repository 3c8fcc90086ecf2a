use std::process::ExitCode;

use shl_cli::{configure_threads, emit, parse_args, run_suite, summary, CliError, Output};

fn main() -> ExitCode {
    let cfg = match parse_args(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(CliError::Clap(e)) => e.exit(),
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let report = run_suite(&cfg);
    if let Err(e) = emit(&report, &cfg.output) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    // Keep stdout clean for the JSON unless it went to a file.
    match cfg.output {
        Output::Stdout => eprintln!("{}", summary(&report)),
        Output::File(_) => println!("{}", summary(&report)),
    }
    ExitCode::from(report.verdict.exit_code() as u8)
}
