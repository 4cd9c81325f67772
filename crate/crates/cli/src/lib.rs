//! Front end for `tfdlab`: argument handling, subcommand runners and output rendering.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{run, Outcome};
pub use config::{Cli, CliError, RunConfig};

/// Runs a parsed command line and writes its report to `--out` or stdout.
/// Returns the process exit code.
pub fn execute(cli: Cli) -> Result<i32, CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let outcome = run(&cfg)?;
    match &cfg.out {
        Some(path) => output::write_atomic(path, &outcome.text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Config(format!("cannot write stdout: {e}")))?;
        }
    }
    for v in &outcome.violations {
        eprintln!("property violation: {v}");
    }
    Ok(if outcome.violations.is_empty() { 0 } else { 3 })
}
