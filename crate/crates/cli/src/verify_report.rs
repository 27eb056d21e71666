//! `coarsekit verify`: re-checks a report's certificate from the report
//! file alone.
//!
//! Only the window constructors and the standalone checkers are used here.

use std::path::Path;

use anyhow::Result;
use coarsekit_core::{verify, Epistemic};
use serde::Serialize;
use serde_json::Value;

use crate::input::load_json;
use crate::report::{Report, Witness, SCHEMA_VERSION};
use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Decision {
    Accepted,
    Rejected,
    NoCertificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub report: String,
    pub tag: Epistemic,
    pub decision: Decision,
    pub reason: Option<String>,
}

fn param_u64(params: &Value, key: &str) -> Option<u64> {
    params.get(key).and_then(Value::as_u64)
}

/// Checks that the witness answers the question the report says was asked.
fn matches_command(report: &Report, witness: &Witness) -> Result<(), String> {
    let p = &report.command.params;
    let mismatch = |what: &str| Err(format!("witness does not match the requested {what}"));
    match witness {
        Witness::Tower(t) => {
            if param_u64(p, "J") != Some(t.levels as u64) {
                return mismatch("tower height J");
            }
            if param_u64(p, "N") != Some(t.towers.len() as u64) {
                return mismatch("tower count N");
            }
            let (s0, c) = (param_u64(p, "s0"), param_u64(p, "c"));
            for b in &t.bounds {
                let lower = s0.and_then(|s| s.checked_mul(1u64 << (b.level - 1)));
                if Some(b.lower) != lower || Some(b.upper) != lower.and_then(|l| c.map(|c| c * l)) {
                    return mismatch("level bounds");
                }
            }
        }
        Witness::PairFamily(f) => {
            let scales: Option<Vec<u64>> =
                p.get("scales").and_then(Value::as_array).map(|a| a.iter().filter_map(Value::as_u64).collect());
            let got: Vec<u64> = f.families.iter().map(|fam| fam.r).collect();
            if scales.as_ref() != Some(&got) {
                return mismatch("scales");
            }
            if param_u64(p, "B") != Some(f.bound) || param_u64(p, "N") != Some(f.count as u64) {
                return mismatch("bound B or count N");
            }
        }
        Witness::Split(s) => {
            if param_u64(p, "r") != Some(s.r) || param_u64(p, "rho") != Some(s.rho) {
                return mismatch("r or rho");
            }
        }
    }
    Ok(())
}

fn check(report: &Report) -> Result<(Decision, Option<String>)> {
    let witness = match (&report.witness, report.tag) {
        (None, Epistemic::Certificate) => {
            return Ok((Decision::Rejected, Some("certificate report carries no witness".into())))
        }
        (None, _) => return Ok((Decision::NoCertificate, None)),
        (Some(_), tag) if tag != Epistemic::Certificate => {
            return Ok((Decision::Rejected, Some(format!("{tag:?} report carries a witness"))))
        }
        (Some(w), _) => w,
    };
    let Some(fp) = &report.space else {
        return Ok((Decision::Rejected, Some("report has no space fingerprint".into())));
    };
    if let Err(reason) = matches_command(report, witness) {
        return Ok((Decision::Rejected, Some(reason)));
    }
    let w = fp.window_spec().build()?;
    if w.len() != fp.points {
        return Ok((
            Decision::Rejected,
            Some(format!("fingerprint promises {} points, the rebuilt window has {}", fp.points, w.len())),
        ));
    }
    let verdict = match witness {
        Witness::Tower(t) => verify::tower(&w, t),
        Witness::PairFamily(f) => verify::pair_family(&w, f),
        Witness::Split(s) => verify::split(&w, s),
    };
    Ok(match verdict {
        Ok(()) => (Decision::Accepted, None),
        Err(reason) => (Decision::Rejected, Some(reason)),
    })
}

pub fn run(path: &Path) -> Result<Verdict> {
    let report: Report = load_json(path)?;
    if report.schema_version != SCHEMA_VERSION {
        return Err(UsageError(format!(
            "report schema version {} is not supported (expected {SCHEMA_VERSION})",
            report.schema_version
        ))
        .into());
    }
    let (decision, reason) = check(&report)?;
    Ok(Verdict { report: path.display().to_string(), tag: report.tag, decision, reason })
}
