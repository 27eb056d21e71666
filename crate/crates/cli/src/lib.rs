//! Command-line front end for `coarsekit-core`.
//!
//! Every subcommand writes one JSON [`report::Report`]. Profiles can also
//! be written as CSV with the header `r,point,value`. Reports tagged
//! `CERTIFICATE` embed a witness that `coarsekit verify` re-checks from
//! the report file alone.

pub mod args;
mod commands;
pub mod input;
pub mod report;
pub mod verify_report;

use std::fmt;
use std::path::PathBuf;

use anyhow::Result;

pub use args::{Command, RunConfig};
pub use input::SchemaError;
pub use report::Report;

/// Bad command-line parameters.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "usage error: {}", self.0)
    }
}

impl std::error::Error for UsageError {}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    /// The report (or verdict) as pretty JSON.
    pub json: String,
    pub csv: Option<(PathBuf, String)>,
    /// False when the run completed but a check failed.
    pub success: bool,
}

/// Runs one command and returns its output along with where the JSON
/// should go (`None` = stdout).
pub fn run(config: &RunConfig) -> Result<(Output, Option<PathBuf>)> {
    match &config.command {
        Command::Space(c) => commands::space(c),
        Command::Analyze(c) => commands::analyze(c),
        Command::Detect(c) => commands::detect(c),
        Command::Higson(c) => commands::higson(c),
        Command::Roe(c) => commands::roe(c),
        Command::Verify(v) => {
            let verdict = verify_report::run(&v.report)?;
            let mut json = serde_json::to_string_pretty(&verdict)?;
            json.push('\n');
            let success = verdict.decision != verify_report::Decision::Rejected;
            Ok((Output { json, csv: None, success }, None))
        }
    }
}

/// Exit status for an error: 2 for usage and schema problems, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    let usage = err.chain().any(|e| {
        e.is::<UsageError>()
            || e.is::<SchemaError>()
            || matches!(e.downcast_ref::<coarsekit_core::Error>(), Some(coarsekit_core::Error::Usage(_)))
    });
    if usage {
        2
    } else {
        1
    }
}

/// Caps the worker pool at `COARSEKIT_THREADS` when set.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("COARSEKIT_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| UsageError(format!("COARSEKIT_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(UsageError("COARSEKIT_THREADS must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}
