use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::space::{Coords, Space, SpaceKind};

/// A strictly increasing, unbounded function of a 1-based index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Growth {
    /// `scale * n^exponent + offset`
    Polynomial {
        scale: u64,
        exponent: u32,
        #[serde(default)]
        offset: u64,
    },
    /// `scale * base^n`
    Exponential { scale: u64, base: u64 },
}

impl Growth {
    pub fn linear(scale: u64, offset: u64) -> Self {
        Growth::Polynomial { scale, exponent: 1, offset }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Growth::Polynomial { scale, exponent, .. } if scale == 0 || exponent == 0 => {
                Err(usage!("polynomial growth needs scale >= 1 and exponent >= 1"))
            }
            Growth::Exponential { scale, base } if scale == 0 || base < 2 => {
                Err(usage!("exponential growth needs scale >= 1 and base >= 2"))
            }
            _ => Ok(()),
        }
    }

    pub fn at(&self, n: u64) -> u64 {
        match *self {
            Growth::Polynomial { scale, exponent, offset } => {
                scale.saturating_mul(n.saturating_pow(exponent)).saturating_add(offset)
            }
            Growth::Exponential { scale, base } => {
                let e = u32::try_from(n).unwrap_or(u32::MAX);
                scale.saturating_mul(base.saturating_pow(e))
            }
        }
    }
}

/// A finite metric space given by its distance matrix. Point 0 is the
/// designated basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PatternRepr", into = "PatternRepr")]
pub struct Pattern {
    distances: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternRepr {
    distances: Vec<Vec<u64>>,
}

impl TryFrom<PatternRepr> for Pattern {
    type Error = crate::Error;

    fn try_from(r: PatternRepr) -> Result<Self> {
        Pattern::new(r.distances)
    }
}

impl From<Pattern> for PatternRepr {
    fn from(p: Pattern) -> Self {
        PatternRepr { distances: p.distances }
    }
}

impl Pattern {
    pub fn new(distances: Vec<Vec<u64>>) -> Result<Self> {
        let k = distances.len();
        if k == 0 {
            return Err(usage!("pattern must be nonempty"));
        }
        for (i, row) in distances.iter().enumerate() {
            if row.len() != k {
                return Err(usage!("pattern distance matrix is not square"));
            }
            for j in 0..k {
                let d = row[j];
                if (i == j) != (d == 0) || d != distances[j][i] {
                    return Err(usage!("pattern distance ({i},{j}) breaks identity or symmetry"));
                }
                for l in 0..k {
                    if d > distances[i][l] + distances[l][j] {
                        return Err(usage!("pattern distances ({i},{l},{j}) break the triangle inequality"));
                    }
                }
            }
        }
        Ok(Pattern { distances })
    }

    /// `k` points on a line at unit spacing.
    pub fn path(k: usize) -> Result<Self> {
        Pattern::new(
            (0..k)
                .map(|i| (0..k).map(|j| i.abs_diff(j) as u64).collect())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn distance(&self, p: usize, q: usize) -> u64 {
        self.distances[p][q]
    }

    pub fn diameter(&self) -> u64 {
        self.distances.iter().flatten().copied().max().unwrap_or(0)
    }
}

fn split_index(p: &[i64]) -> Option<(u64, &[i64])> {
    let (&n, rest) = p.split_first()?;
    (n >= 1).then_some((n as u64, rest))
}

/// Infinitely many copies of a pattern joined by a star metric: copy `n`
/// hangs off a virtual hub by a spoke of length `gap(n)` from its point 0.
///
/// Points are `[n, q]` with `n >= 1` and `q` a pattern index.
#[derive(Clone, Debug)]
pub struct ClusterSpace {
    pub pattern: Arc<Pattern>,
    pub gap: Growth,
}

impl Space for ClusterSpace {
    fn kind(&self) -> SpaceKind {
        SpaceKind::Clusters
    }

    fn basepoint(&self) -> Coords {
        alloc::vec![1, 0]
    }

    fn contains(&self, p: &[i64]) -> bool {
        p.len() == 2 && p[0] >= 1 && p[1] >= 0 && (p[1] as usize) < self.pattern.len()
    }

    fn distance(&self, x: &[i64], y: &[i64]) -> u64 {
        let (n, q) = (x[0] as u64, x[1] as usize);
        let (m, s) = (y[0] as u64, y[1] as usize);
        if n == m {
            return self.pattern.distance(q, s);
        }
        let p = &self.pattern;
        p.distance(q, 0) + self.gap.at(n) + self.gap.at(m) + p.distance(s, 0)
    }

    fn ball(&self, center: &[i64], radius: u64) -> Vec<Coords> {
        let (n, q) = (center[0] as u64, center[1] as usize);
        let p = &self.pattern;
        let mut out: Vec<Coords> = (0..p.len())
            .filter(|&s| p.distance(q, s) <= radius)
            .map(|s| alloc::vec![n as i64, s as i64])
            .collect();
        let to_hub = p.distance(q, 0) + self.gap.at(n);
        if to_hub > radius {
            return out;
        }
        let budget = radius - to_hub;
        let mut m = 1u64;
        loop {
            let fm = self.gap.at(m);
            if fm > budget {
                break;
            }
            if m != n {
                for s in 0..p.len() {
                    if fm + p.distance(s, 0) <= budget {
                        out.push(alloc::vec![m as i64, s as i64]);
                    }
                }
            }
            m += 1;
        }
        out
    }
}

/// Coarse disjoint union of finitely many spaces, with the star metric
/// `d(x, y) = d_n(x, p_n) + f(n) + f(m) + d_m(y, p_m)` across components.
///
/// Points are `[n, inner...]` with `n` the 1-based component index.
#[derive(Debug)]
pub struct CoarseUnion {
    components: Vec<Arc<dyn Space>>,
    bases: Vec<Coords>,
    pub spoke: Growth,
}

impl CoarseUnion {
    pub fn new(components: Vec<Arc<dyn Space>>, spoke: Growth) -> Result<Self> {
        if components.is_empty() {
            return Err(usage!("coarse union needs at least one component"));
        }
        spoke.validate()?;
        let bases = components.iter().map(|c| c.basepoint()).collect();
        Ok(CoarseUnion { components, bases, spoke })
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    fn to_hub(&self, n: u64, inner: &[i64]) -> u64 {
        let i = (n - 1) as usize;
        self.components[i].distance(inner, &self.bases[i]) + self.spoke.at(n)
    }

    fn tagged(n: u64, inner: &[i64]) -> Coords {
        let mut p = Vec::with_capacity(inner.len() + 1);
        p.push(n as i64);
        p.extend_from_slice(inner);
        p
    }
}

impl Space for CoarseUnion {
    fn kind(&self) -> SpaceKind {
        SpaceKind::CoarseUnion
    }

    fn basepoint(&self) -> Coords {
        Self::tagged(1, &self.bases[0])
    }

    fn contains(&self, p: &[i64]) -> bool {
        match split_index(p) {
            Some((n, inner)) => {
                (n as usize) <= self.components.len() && self.components[n as usize - 1].contains(inner)
            }
            None => false,
        }
    }

    fn distance(&self, x: &[i64], y: &[i64]) -> u64 {
        let (n, xi) = (x[0] as u64, &x[1..]);
        let (m, yi) = (y[0] as u64, &y[1..]);
        if n == m {
            return self.components[n as usize - 1].distance(xi, yi);
        }
        self.to_hub(n, xi) + self.to_hub(m, yi)
    }

    fn ball(&self, center: &[i64], radius: u64) -> Vec<Coords> {
        let (n, inner) = (center[0] as u64, &center[1..]);
        let mut out: Vec<Coords> = self.components[n as usize - 1]
            .ball(inner, radius)
            .iter()
            .map(|p| Self::tagged(n, p))
            .collect();
        let to_hub = self.to_hub(n, inner);
        if to_hub > radius {
            return out;
        }
        let budget = radius - to_hub;
        for m in 1..=self.components.len() as u64 {
            let fm = self.spoke.at(m);
            if m == n || fm > budget {
                continue;
            }
            let i = (m - 1) as usize;
            for p in self.components[i].ball(&self.bases[i], budget - fm) {
                out.push(Self::tagged(m, &p));
            }
        }
        out
    }
}
