use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use coarsekit::{exit_code, init_threads, run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match execute(&config) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}

fn execute(config: &RunConfig) -> Result<bool> {
    init_threads()?;
    let (output, out) = run(config)?;
    if let Some((path, text)) = &output.csv {
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    match out {
        Some(path) => fs::write(&path, &output.json).with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(output.json.as_bytes())?,
    }
    Ok(output.success)
}
