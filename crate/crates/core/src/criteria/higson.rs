use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::rational::{self, Rational};
use crate::space::{PointId, PointSet, Window};

/// A function `h = sum_n h_n` on the window with
/// `h_n(x) = max(1 - d(x, A_{2n}) / n, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HigsonFunction {
    /// Indexed by point id.
    pub values: Vec<Rational>,
    /// The pieces `A_n`, keyed by `n`.
    pub pieces: BTreeMap<u64, Vec<PointId>>,
    /// The `n` with a nonzero summand `h_n`.
    pub summands: Vec<u64>,
}

impl HigsonFunction {
    pub fn value(&self, x: PointId) -> Rational {
        self.values[x.index()]
    }

    /// `A' = union of the even-indexed pieces`.
    pub fn selected(&self) -> PointSet {
        self.pieces
            .iter()
            .filter(|(n, _)| *n % 2 == 0)
            .flat_map(|(_, v)| v.iter().copied())
            .collect()
    }
}

/// Splits `A` into pieces `A_n` and builds the bump function that is 1 on
/// the even-indexed pieces and 0 on `B`.
///
/// Points of `A` are taken in canonical order (by distance from the
/// basepoint), which must make `d(x, B)` nondecreasing. Each point gets
/// an index `n` subject to `d(A_n, B) >= n` for `n > 1` and
/// `d(A_n, A_m) > 2n` for `m <= n - 2`, preferring indices no smaller than
/// the current largest one `K`. From `K` upward the constraints only
/// tighten, so the admissible indices there form an interval; the largest
/// even one is taken, else the largest. Only when `K` itself is blocked are
/// smaller indices tried. With `B` empty the index is capped at the
/// horizon.
pub fn higson_from_separated(a: &PointSet, b: &PointSet, w: &Window) -> Result<HigsonFunction> {
    for &x in a.iter().chain(b) {
        if x.index() >= w.len() {
            return Err(usage!("point {x} is not in the window"));
        }
    }
    let b_list: Vec<PointId> = b.iter().copied().collect();
    let far = |x: PointId| w.distance_to_set(x, &b_list).unwrap_or(w.horizon());

    let mut offenders = Vec::new();
    let mut last = 0u64;
    for &x in a {
        let d = far(x);
        if d < last {
            offenders.push(x);
        }
        last = last.max(d);
    }
    if !offenders.is_empty() {
        let list: Vec<_> = offenders.iter().map(|x| alloc::format!("{x} {:?}", w.coords(*x))).collect();
        return Err(Error::Precondition(alloc::format!(
            "d(x, B) decreases along A at {}",
            list.join(", ")
        )));
    }

    let mut pieces: BTreeMap<u64, Vec<PointId>> = BTreeMap::new();
    let mut current = 1u64;
    for &x in a {
        let d_b = far(x);
        let admissible = |n: u64| -> bool {
            if n > 1 && n > d_b {
                return false;
            }
            pieces.iter().all(|(&m, piece)| {
                let need = if n >= 3 && m + 2 <= n {
                    2 * n
                } else if m >= 3 && n + 2 <= m {
                    2 * m
                } else {
                    return true;
                };
                piece.iter().all(|&y| w.distance(x, y) > need)
            })
        };
        let n = if admissible(current) {
            // above `current` the admissible indices form an interval
            let (mut lo, mut hi) = (current, d_b.max(current));
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                if admissible(mid) {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            if lo % 2 == 0 || lo == current { lo } else { lo - 1 }
        } else {
            let below: Vec<u64> = (1..current).rev().filter(|&n| admissible(n)).collect();
            match below.iter().find(|&&n| n % 2 == 0).or(below.first()) {
                Some(&n) => n,
                None => {
                    let list = alloc::format!("{x} {:?}", w.coords(x));
                    return Err(Error::Precondition(alloc::format!("no admissible piece for {list}")));
                }
            }
        };
        pieces.entry(n).or_default().push(x);
        current = current.max(n);
    }

    let mut values = alloc::vec![rational::zero(); w.len()];
    let mut owner: Vec<Option<u64>> = alloc::vec![None; w.len()];
    let mut summands = Vec::new();
    for (&m, piece) in &pieces {
        if m % 2 != 0 {
            continue;
        }
        let n = m / 2;
        summands.push(n);
        let mut best: BTreeMap<PointId, u64> = BTreeMap::new();
        for &y in piece {
            for x in w.neighbors(y, n - 1) {
                let d = w.distance(x, y);
                best.entry(x).and_modify(|v| *v = (*v).min(d)).or_insert(d);
            }
        }
        for (x, d) in best {
            if let Some(prev) = owner[x.index()] {
                return Err(Error::Invariant(alloc::format!(
                    "summands h_{prev} and h_{n} are both nonzero at {x}"
                )));
            }
            owner[x.index()] = Some(n);
            values[x.index()] = Rational::new((n - d) as i128, n as i128);
        }
    }
    Ok(HigsonFunction { values, pieces, summands })
}

/// Pointwise maximum of two functions on the same window.
pub fn higson_max(f: &[Rational], g: &[Rational]) -> Result<Vec<Rational>> {
    if f.len() != g.len() {
        return Err(usage!("functions live on windows of different sizes"));
    }
    Ok(f.iter().zip(g).map(|(a, b)| *a.max(b)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariationReport {
    pub epsilon: Rational,
    pub r: u64,
    /// Unordered pairs `{x, y}`, `x < y`, at distance `<= r` with at least
    /// one endpoint in `interior(r)` and `|h(x) - h(y)| > epsilon`.
    pub violations: Vec<(PointId, PointId)>,
    /// Largest depth of a violating endpoint, 0 if none.
    pub enclosing_radius: u64,
    /// Largest `|h(x) - h(y)|` over all such pairs, violating or not.
    pub max_variation: Rational,
}

pub fn variation_report(h: &[Rational], epsilon: Rational, r: u64, w: &Window) -> Result<VariationReport> {
    if h.len() != w.len() {
        return Err(usage!("function has {} values for a window of {} points", h.len(), w.len()));
    }
    if !epsilon.is_positive() {
        return Err(usage!("epsilon must be positive"));
    }
    if r > w.horizon() {
        return Err(usage!("r = {r} exceeds the window horizon {}", w.horizon()));
    }
    let mut found = alloc::collections::BTreeSet::new();
    let mut max_variation = Rational::zero();
    for x in w.interior(r) {
        for y in w.neighbors(x, r) {
            let diff = (h[x.index()] - h[y.index()]).abs();
            if diff > max_variation {
                max_variation = diff;
            }
            if diff > epsilon {
                found.insert((x.min(y), x.max(y)));
            }
        }
    }
    let enclosing_radius = found.iter().flat_map(|&(x, y)| [w.depth(x), w.depth(y)]).max().unwrap_or(0);
    Ok(VariationReport { epsilon, r, violations: found.into_iter().collect(), enclosing_radius, max_variation })
}
