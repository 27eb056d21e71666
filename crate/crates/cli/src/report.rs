//! Report records written by every subcommand.

use coarsekit_core::criteria::{PairFamilyWitness, SplitWitness, TowerWitness};
use coarsekit_core::{Epistemic, SpaceSpec, WindowSpec};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever a field of [`Report`] changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub params: Value,
}

/// The window a report was computed on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fingerprint {
    pub space: SpaceSpec,
    pub horizon: u64,
    pub points: usize,
}

impl Fingerprint {
    pub fn new(spec: &WindowSpec, points: usize) -> Self {
        Fingerprint { space: spec.space.clone(), horizon: spec.horizon, points }
    }

    pub fn window_spec(&self) -> WindowSpec {
        WindowSpec { space: self.space.clone(), horizon: self.horizon }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Tower(TowerWitness),
    PairFamily(PairFamilyWitness),
    Split(SplitWitness),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub toolkit_version: String,
    pub command: CommandEcho,
    pub space: Option<Fingerprint>,
    pub tag: Epistemic,
    pub results: Value,
    pub witness: Option<Witness>,
    pub note: String,
}

pub fn note(tag: Epistemic) -> &'static str {
    match tag {
        Epistemic::Certificate => {
            "finite certificate inside this window; `coarsekit verify` re-checks it without the search code"
        }
        Epistemic::NoWitnessAtScale => {
            "no witness at these parameters inside this window; this does not rule one out at other scales"
        }
        Epistemic::Profile => "finite-window observation; values are exact only at points away from the horizon",
    }
}

impl Report {
    pub fn new(command: CommandEcho, space: Option<Fingerprint>, tag: Epistemic, results: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            toolkit_version: TOOLKIT_VERSION.to_string(),
            command,
            space,
            tag,
            results,
            witness: None,
            note: note(tag).to_string(),
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
