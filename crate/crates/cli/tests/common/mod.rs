#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde::Deserialize;

pub fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs the binary from the configs directory.
pub fn coarsekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coarsekit"))
        .args(args)
        .current_dir(configs())
        .output()
        .expect("binary runs")
}

#[derive(Debug, Clone, Deserialize)]
pub struct SuiteEntry {
    pub name: String,
    pub args: Vec<String>,
    pub csv: bool,
}

pub fn suite() -> Vec<SuiteEntry> {
    let text = fs::read_to_string(configs().join("suite.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// One run of a suite entry: the JSON report and, when asked, the CSV.
#[derive(Debug, PartialEq, Eq)]
pub struct SuiteRun {
    pub json: String,
    pub csv: Option<String>,
}

pub fn run_entry(e: &SuiteEntry, scratch: &Path) -> Result<SuiteRun, String> {
    let mut args: Vec<String> = e.args.clone();
    let csv_path = scratch.join(format!("{}.csv", e.name));
    if e.csv {
        args.push("--csv".into());
        args.push(csv_path.display().to_string());
    }
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = coarsekit(&refs);
    if !out.status.success() {
        return Err(format!("{} exited with {}: {}", e.name, out.status, String::from_utf8_lossy(&out.stderr)));
    }
    let json = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let csv = if e.csv { Some(fs::read_to_string(&csv_path).map_err(|e| e.to_string())?) } else { None };
    Ok(SuiteRun { json, csv })
}

/// Compares against `tests/golden`, or rewrites it when
/// `COARSEKIT_BLESS` is set.
pub fn check_golden(e: &SuiteEntry, run: &SuiteRun) -> Result<(), String> {
    let dir = golden_dir();
    let mut files = vec![(format!("{}.json", e.name), &run.json)];
    if let Some(csv) = &run.csv {
        files.push((format!("{}.csv", e.name), csv));
    }
    for (file, text) in files {
        let path = dir.join(&file);
        if std::env::var_os("COARSEKIT_BLESS").is_some() {
            fs::write(&path, text).map_err(|e| e.to_string())?;
            continue;
        }
        let golden = fs::read_to_string(&path).map_err(|err| format!("{file}: {err}"))?;
        if golden != *text {
            return Err(format!("{file} differs from the golden copy"));
        }
    }
    Ok(())
}

/// Writes the report to `scratch` and runs `coarsekit verify` on it.
/// Returns the verdict JSON and whether the exit status was zero.
pub fn verify_report(name: &str, json: &str, scratch: &Path) -> (serde_json::Value, bool) {
    let path = scratch.join(format!("{name}.report.json"));
    fs::write(&path, json).unwrap();
    let out = coarsekit(&["verify", path.to_str().unwrap()]);
    let verdict = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (verdict, out.status.success())
}
