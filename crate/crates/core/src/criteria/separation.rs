use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::space::{PointId, PointSet, Window};

/// `s_r(x)` as far as the window can certify it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Separation {
    Exact(u64),
    /// No complement point close enough lies inside the window; the true
    /// value is at least this.
    ExceedsWindow(u64),
}

impl Separation {
    pub fn exact(self) -> Option<u64> {
        match self {
            Separation::Exact(v) => Some(v),
            Separation::ExceedsWindow(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationProfile {
    pub r: u64,
    pub values: BTreeMap<PointId, Separation>,
}

/// `d(N_r(x), X \ N_r(x))` for one point.
///
/// Any ambient point within `v` of the ball lies within `depth(x) + r + v`
/// of the basepoint, so values up to `horizon + 1 - depth(x) - r` are
/// certified exactly. Candidates are searched in doubling shells.
pub fn separation_at(w: &Window, x: PointId, r: u64) -> Separation {
    let depth = w.depth(x);
    let bound = (w.horizon() + 1).saturating_sub(depth + r);
    let ball: PointSet = w.neighbors(x, r).into_iter().collect();
    let mut t = 1u64;
    loop {
        let t_eff = t.min(bound.max(1));
        let best = w
            .neighbors(x, r + t_eff)
            .into_iter()
            .filter(|y| !ball.contains(y))
            .filter_map(|y| ball.iter().map(|&b| w.distance(b, y)).min())
            .min();
        match best {
            Some(v) if v <= t_eff => return Separation::Exact(v),
            Some(v) if t_eff >= bound && v <= bound => return Separation::Exact(v),
            _ => {}
        }
        if t_eff >= bound {
            return Separation::ExceedsWindow(bound.max(1));
        }
        t = t.saturating_mul(2);
    }
}

/// `s_r` on every point of `interior(2r)`.
pub fn separation_profile(w: &Window, r: u64) -> Result<SeparationProfile> {
    if r == 0 {
        return Err(usage!("separation radius must be at least 1"));
    }
    if 2 * r > w.horizon() {
        return Err(usage!("2r = {} exceeds the window horizon {}", 2 * r, w.horizon()));
    }
    let values = w.interior(2 * r).into_iter().map(|x| (x, separation_at(w, x, r))).collect();
    Ok(SeparationProfile { r, values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "trend", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Trend {
    /// Annulus minima strictly increase outward.
    Diverging,
    /// The outermost minimum does not exceed an earlier one.
    Bounded { cap: u64 },
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annulus {
    /// Depth range `[inner, outer)`.
    pub inner: u64,
    pub outer: u64,
    pub exact_points: usize,
    pub exceeding_points: usize,
    /// Minimum over exactly known values.
    pub min: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivergenceRow {
    pub r: u64,
    pub annuli: Vec<Annulus>,
    pub trend: Trend,
}

/// Splits the depth range `[0, D]` of `interior(2r)` into `count` equal
/// bands and classifies the sequence of per-band minima of `s_r`. `D` is
/// the largest depth that actually occurs, which can be far below
/// `horizon - 2r` in sparse spaces.
///
/// The innermost band is reported but left out of the trend: near the
/// basepoint the profile is dominated by the first few pieces of the space
/// rather than by its behavior at infinity.
pub fn divergence_row(profile: &SeparationProfile, w: &Window, count: usize) -> Result<DivergenceRow> {
    if count < 2 {
        return Err(usage!("divergence needs at least 2 annuli"));
    }
    let limit = profile.values.keys().map(|&x| w.depth(x)).max().unwrap_or(0);
    let width = (limit + 1).div_ceil(count as u64).max(1);
    let mut annuli: Vec<Annulus> = (0..count as u64)
        .map(|i| Annulus { inner: i * width, outer: (i + 1) * width, exact_points: 0, exceeding_points: 0, min: None })
        .collect();
    for (&x, &s) in &profile.values {
        let band = ((w.depth(x) / width) as usize).min(count - 1);
        let a = &mut annuli[band];
        match s {
            Separation::Exact(v) => {
                a.exact_points += 1;
                a.min = Some(a.min.map_or(v, |m| m.min(v)));
            }
            Separation::ExceedsWindow(_) => a.exceeding_points += 1,
        }
    }
    let minima: Vec<u64> = annuli[1..].iter().filter_map(|a| a.min).collect();
    Ok(DivergenceRow { r: profile.r, annuli, trend: classify(&minima) })
}

fn classify(minima: &[u64]) -> Trend {
    if minima.len() < 2 {
        return Trend::Mixed;
    }
    if minima.windows(2).all(|p| p[0] < p[1]) {
        return Trend::Diverging;
    }
    let (last, earlier) = minima.split_last().expect("nonempty");
    if earlier.iter().any(|&m| m >= *last) {
        Trend::Bounded { cap: minima.iter().copied().max().expect("nonempty") }
    } else {
        Trend::Mixed
    }
}
