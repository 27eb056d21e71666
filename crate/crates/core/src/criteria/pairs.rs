use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::matching::general_matching;
use crate::space::{Point, PointId, Window};

/// `count` pairwise disjoint pairs with `r < d(x, y) <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFamily {
    pub r: u64,
    pub pairs: Vec<(Point, Point)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScaleOutcome {
    Found { family: PairFamily },
    /// The window's largest family at this scale has only `max_pairs` pairs.
    NoWitnessAtScale { r: u64, max_pairs: usize },
}

impl ScaleOutcome {
    pub fn r(&self) -> u64 {
        match self {
            ScaleOutcome::Found { family } => family.r,
            ScaleOutcome::NoWitnessAtScale { r, .. } => *r,
        }
    }
}

/// Per-scale pair families sharing one upper bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFamilyWitness {
    pub bound: u64,
    pub count: usize,
    pub families: Vec<PairFamily>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub bound: u64,
    pub count: usize,
    pub scales: Vec<ScaleOutcome>,
}

impl PairReport {
    /// The witness, if every scale succeeded.
    pub fn witness(&self) -> Option<PairFamilyWitness> {
        let families = self
            .scales
            .iter()
            .map(|s| match s {
                ScaleOutcome::Found { family } => Some(family.clone()),
                ScaleOutcome::NoWitnessAtScale { .. } => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PairFamilyWitness { bound: self.bound, count: self.count, families })
    }
}

/// Searches for `count` disjoint pairs at distance in `(r, bound]`, for
/// each scale `r`.
///
/// A scale fails only when a maximum matching of the pair graph is smaller
/// than `count`, so every negative answer is exhaustive over the window.
pub fn detect_m32(w: &Window, scales: &[u64], bound: u64, count: usize) -> Result<PairReport> {
    if count == 0 {
        return Err(usage!("pair count must be at least 1"));
    }
    if let Some(r) = scales.iter().find(|&&r| r >= bound) {
        return Err(usage!("scale {r} is not below the bound {bound}"));
    }
    let scales = scales.iter().map(|&r| scale(w, r, bound, count)).collect();
    Ok(PairReport { bound, count, scales })
}

/// One scale of [`detect_m32`].
pub fn scale(w: &Window, r: u64, bound: u64, count: usize) -> ScaleOutcome {
    let adj: Vec<Vec<usize>> = w
        .ids()
        .map(|x| {
            w.neighbors(x, bound)
                .into_iter()
                .filter(|&y| w.distance(x, y) > r)
                .map(|y| y.index())
                .collect()
        })
        .collect();
    let mates = general_matching(&adj, count);
    let mut pairs = Vec::new();
    for (v, m) in mates.iter().enumerate() {
        if let Some(u) = *m {
            if v < u {
                let (x, y) = (PointId(v as u32), PointId(u as u32));
                pairs.push((w.point(x), w.point(y)));
            }
        }
    }
    if pairs.len() >= count {
        pairs.truncate(count);
        ScaleOutcome::Found { family: PairFamily { r, pairs } }
    } else {
        ScaleOutcome::NoWitnessAtScale { r, max_pairs: pairs.len() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn integers_have_pairs_at_every_scale() {
        let w = zoo::make_grid(true, 1, 60).unwrap();
        let report = detect_m32(&w, &[2, 4, 8], 16, 10).unwrap();
        let wit = report.witness().expect("all scales");
        for fam in &wit.families {
            assert_eq!(fam.pairs.len(), 10);
            for (x, y) in &fam.pairs {
                let d = w.distance(x.id, y.id);
                assert!(fam.r < d && d <= 16);
            }
        }
        assert!(detect_m32(&w, &[16], 16, 1).is_err());
    }
}
