use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{PointId, PointSet, Window};
use crate::error::{usage, Result};

/// `{x in window : d(x, A) <= r}`.
pub fn neighborhood(w: &Window, set: &PointSet, r: u64) -> PointSet {
    if r == 0 {
        return set.clone();
    }
    let mut out = PointSet::new();
    for &a in set {
        out.extend(w.neighbors(a, r));
    }
    out
}

/// A cover of the window by classes that are each `separation`-separated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub separation: u64,
    pub classes: Vec<Vec<PointId>>,
}

/// Greedy coloring of the proximity graph `d <= r`, in canonical point order.
///
/// Each point gets the smallest class not used by an earlier point within
/// `r`, so the class count is at most `max_x |N_r(x)|`.
pub fn separated_partition(w: &Window, r: u64) -> Result<Partition> {
    if r == 0 {
        return Err(usage!("separation radius must be at least 1"));
    }
    let mut color: Vec<Option<usize>> = vec![None; w.len()];
    let mut classes: Vec<Vec<PointId>> = Vec::new();
    let mut taken: Vec<bool> = Vec::new();
    for x in w.ids() {
        taken.clear();
        taken.resize(classes.len(), false);
        for y in w.neighbors(x, r) {
            if let Some(c) = color[y.index()] {
                taken[c] = true;
            }
        }
        let c = taken.iter().position(|t| !t).unwrap_or(classes.len());
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(x);
        color[x.index()] = Some(c);
    }
    Ok(Partition { separation: r, classes })
}

/// Observed ball-size bound `r -> max |N_r(x)|`, `r = 0..=rmax`.
///
/// At radius `r` only points of `interior(r)` are measured, so every ball is
/// a full ambient ball. The reported value is the running maximum over radii
/// up to `r`, which is still a lower bound for the true `m(r)` and is
/// monotone by construction.
pub fn ulf_profile(w: &Window, rmax: u64) -> Result<BTreeMap<u64, usize>> {
    if rmax > w.horizon() {
        return Err(usage!("rmax {rmax} exceeds the window horizon {}", w.horizon()));
    }
    let mut out = BTreeMap::new();
    let mut running = 0usize;
    for r in 0..=rmax {
        let observed = w
            .interior(r)
            .into_iter()
            .map(|x| w.neighbors(x, r).len())
            .max()
            .unwrap_or(0);
        running = running.max(observed);
        out.insert(r, running);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum MetricViolation {
    Negative { x: PointId, y: PointId, distance: i64 },
    Identity { x: PointId, distance: i64 },
    Indiscernible { x: PointId, y: PointId },
    Asymmetric { x: PointId, y: PointId, forward: i64, backward: i64 },
    Triangle { x: PointId, y: PointId, z: PointId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricReport {
    pub samples: usize,
    pub violations: Vec<MetricViolation>,
}

impl MetricReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples `samples` triples and checks the metric axioms on the window's
/// oracle.
pub fn check_metric(w: &Window, samples: usize, seed: u64) -> Result<MetricReport> {
    check_metric_with(w, samples, seed, |x, y| {
        i64::try_from(w.distance(x, y)).unwrap_or(i64::MAX)
    })
}

/// Same as [`check_metric`] against an arbitrary distance function on the
/// window's points.
///
/// A triple that touches a negative distance reports only that and skips the
/// remaining checks. Violations are deduplicated.
pub fn check_metric_with<F>(w: &Window, samples: usize, seed: u64, dist: F) -> Result<MetricReport>
where
    F: Fn(PointId, PointId) -> i64,
{
    if samples == 0 {
        return Err(usage!("sample_count must be at least 1"));
    }
    let n = w.len() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = BTreeSet::new();
    for _ in 0..samples {
        let x = PointId(rng.gen_range(0..n));
        let y = PointId(rng.gen_range(0..n));
        let z = PointId(rng.gen_range(0..n));
        if let Some(v) = check_triple(x, y, z, &dist) {
            found.insert(v);
        }
    }
    Ok(MetricReport { samples, violations: found.into_iter().collect() })
}

fn check_triple<F>(x: PointId, y: PointId, z: PointId, dist: &F) -> Option<MetricViolation>
where
    F: Fn(PointId, PointId) -> i64,
{
    let pairs = [(x, y), (y, x), (y, z), (z, y), (x, z), (z, x), (x, x), (y, y), (z, z)];
    for &(a, b) in &pairs {
        let d = dist(a, b);
        if d < 0 {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            return Some(MetricViolation::Negative { x: a, y: b, distance: d });
        }
    }
    for p in [x, y, z] {
        let d = dist(p, p);
        if d != 0 {
            return Some(MetricViolation::Identity { x: p, distance: d });
        }
    }
    for (a, b) in [(x, y), (y, z), (x, z)] {
        let (fwd, bwd) = (dist(a, b), dist(b, a));
        if fwd != bwd {
            return Some(MetricViolation::Asymmetric { x: a, y: b, forward: fwd, backward: bwd });
        }
        if a != b && fwd == 0 {
            return Some(MetricViolation::Indiscernible { x: a.min(b), y: a.max(b) });
        }
    }
    let (dxy, dyz, dxz) = (dist(x, y) as i128, dist(y, z) as i128, dist(x, z) as i128);
    if dxz > dxy + dyz || dxy > dxz + dyz || dyz > dxy + dxz {
        return Some(MetricViolation::Triangle { x, y, z });
    }
    None
}
