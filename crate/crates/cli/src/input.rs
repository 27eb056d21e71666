//! Input files: space specs, point sets, cluster model configs.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use coarsekit_core::roe::{Letter, TailExpr, TailTranslation, Term};
use coarsekit_core::zoo::Pattern;
use coarsekit_core::{rational, PointSet, Rational, SpaceSpec, Window, WindowSpec};
use serde::de::DeserializeOwned;
use serde::Deserialize;

/// A JSON file that does not match its schema.
#[derive(Debug)]
pub struct SchemaError {
    pub path: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub context: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "schema error in {}:{}:{}: {}", self.path, self.line, self.column, self.message)?;
        write!(f, "  {:>4} | {}", self.line, self.context)?;
        if self.column > 0 {
            write!(f, "\n       | {:>width$}", "^", width = self.column)?;
        }
        Ok(())
    }
}

impl std::error::Error for SchemaError {}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Parses `text` as `T`, mapping serde errors to [`SchemaError`].
pub fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, SchemaError> {
    serde_json::from_str(text).map_err(|e| {
        let context = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("").to_string();
        let message = e.to_string();
        // serde_json appends " at line L column C"
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        SchemaError { path: path.display().to_string(), line: e.line(), column: e.column(), message, context }
    })
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read(path)?;
    Ok(parse_json(path, &text)?)
}

/// Reads a space file: either `{"space": {...}, "horizon": H}` or a bare
/// space spec `{"kind": ...}`, in which case `horizon` must be given.
pub fn load_window_spec(path: &Path, horizon: Option<u64>) -> Result<WindowSpec> {
    let text = read(path)?;
    let probe: serde_json::Value = parse_json(path, &text)?;
    let mut spec = if probe.get("space").is_some() {
        parse_json::<WindowSpec>(path, &text)?
    } else {
        let space: SpaceSpec = parse_json(path, &text)?;
        let horizon = horizon.with_context(|| {
            format!("{} has no horizon; pass --horizon or wrap it as {{\"space\": .., \"horizon\": ..}}", path.display())
        })?;
        WindowSpec { space, horizon }
    };
    if let Some(h) = horizon {
        spec.horizon = h;
    }
    Ok(spec)
}

pub fn build_window(spec: &WindowSpec) -> Result<Window> {
    Ok(spec.build()?)
}

/// `{"a": [...], "b": [...]}`, both lists of point coordinates.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetsFile {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
}

impl SetsFile {
    pub fn resolve(&self, w: &Window) -> Result<(PointSet, PointSet)> {
        let lookup = |list: &[Vec<i64>], name: &str| -> Result<PointSet> {
            list.iter()
                .map(|c| w.id_of(c).with_context(|| format!("point {c:?} of set {name} is not in the window")))
                .collect()
        };
        Ok((lookup(&self.a, "a")?, lookup(&self.b, "b")?))
    }
}

/// An integer or a `"p/q"` string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Int(i64),
    Text(String),
}

impl RationalInput {
    pub fn value(&self) -> Result<Rational> {
        Ok(match self {
            RationalInput::Int(n) => rational::from_int(*n),
            RationalInput::Text(s) => rational::parse(s)?,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermInput {
    pub coeff: RationalInput,
    pub word: Vec<Letter>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExprInput {
    pub terms: Vec<TermInput>,
}

impl ExprInput {
    pub fn value(&self) -> Result<TailExpr> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(Term { coeff: t.coeff.value()?, word: t.word.clone() }))
            .collect::<Result<_>>()?;
        Ok(TailExpr { terms })
    }
}

/// Config of `roe gns`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GnsConfig {
    pub pattern: Pattern,
    pub translations: Vec<TailTranslation>,
    #[serde(default)]
    pub diagonals: Vec<Vec<RationalInput>>,
    pub stabilize: u64,
    #[serde(default)]
    pub expressions: Vec<ExprInput>,
}

impl GnsConfig {
    pub fn diagonal_values(&self) -> Result<Vec<Vec<Rational>>> {
        self.diagonals.iter().map(|d| d.iter().map(RationalInput::value).collect()).collect()
    }
}
