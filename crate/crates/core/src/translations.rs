//! Partial translations of a window: finite partial bijections with a
//! recorded displacement, and the decomposition of bounded relations into
//! them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::matching::hopcroft_karp;
use crate::space::{PointId, PointSet, Window};

/// An injective map between point sets of one window with
/// `displacement = max d(x, f(x))` over its domain (0 when empty).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialTranslation {
    map: BTreeMap<PointId, PointId>,
    displacement: u64,
}

impl PartialTranslation {
    /// Builds the translation with graph `pairs`. Fails if the pairs do not
    /// define an injective function or mention points outside `w`.
    pub fn new(w: &Window, pairs: impl IntoIterator<Item = (PointId, PointId)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut image = PointSet::new();
        for (x, y) in pairs {
            if x.index() >= w.len() || y.index() >= w.len() {
                return Err(usage!("pair ({x}, {y}) leaves the window"));
            }
            match map.insert(x, y) {
                Some(old) if old != y => return Err(usage!("{x} is sent to both {old} and {y}")),
                Some(_) => continue,
                None => {}
            }
            if !image.insert(y) {
                return Err(usage!("{y} is hit twice, map is not injective"));
            }
        }
        Ok(Self::from_map(w, map))
    }

    fn from_map(w: &Window, map: BTreeMap<PointId, PointId>) -> Self {
        let displacement = map.iter().map(|(&x, &y)| w.distance(x, y)).max().unwrap_or(0);
        PartialTranslation { map, displacement }
    }

    pub fn empty() -> Self {
        PartialTranslation { map: BTreeMap::new(), displacement: 0 }
    }

    /// The identity on `set`.
    pub fn identity(set: &PointSet) -> Self {
        PartialTranslation { map: set.iter().map(|&x| (x, x)).collect(), displacement: 0 }
    }

    /// `x -> g(x)` for every `x` in `domain` where `g` returns a window point.
    pub fn from_coords<F>(w: &Window, domain: impl IntoIterator<Item = PointId>, g: F) -> Result<Self>
    where
        F: Fn(&[i64]) -> Option<Vec<i64>>,
    {
        let pairs: Vec<_> = domain
            .into_iter()
            .filter_map(|x| g(w.coords(x)).and_then(|c| w.id_of(&c)).map(|y| (x, y)))
            .collect();
        Self::new(w, pairs)
    }

    pub fn displacement(&self) -> u64 {
        self.displacement
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, x: PointId) -> Option<PointId> {
        self.map.get(&x).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        self.map.iter().map(|(&x, &y)| (x, y))
    }

    pub fn domain(&self) -> PointSet {
        self.map.keys().copied().collect()
    }

    pub fn image(&self) -> PointSet {
        self.map.values().copied().collect()
    }

    /// `{x in dom f : f(x) = x}`.
    pub fn fixed_points(&self) -> PointSet {
        self.pairs().filter(|(x, y)| x == y).map(|(x, _)| x).collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.pairs().all(|(x, y)| x == y)
    }

    /// Recomputes the displacement from the graph.
    pub fn measured_displacement(&self, w: &Window) -> u64 {
        self.pairs().map(|(x, y)| w.distance(x, y)).max().unwrap_or(0)
    }

    /// `f(A ∩ dom f)`.
    pub fn apply(&self, set: &PointSet) -> PointSet {
        set.iter().filter_map(|x| self.get(*x)).collect()
    }

    pub fn invert(&self) -> Self {
        PartialTranslation {
            map: self.map.iter().map(|(&x, &y)| (y, x)).collect(),
            displacement: self.displacement,
        }
    }

    /// `self ∘ g`, defined on `g^{-1}(im g ∩ dom self)`.
    pub fn compose(&self, g: &Self, w: &Window) -> Self {
        let map = g.pairs().filter_map(|(x, y)| self.get(y).map(|z| (x, z))).collect();
        Self::from_map(w, map)
    }

    /// Restriction to `dom f ∩ set`.
    pub fn restrict(&self, set: &PointSet, w: &Window) -> Self {
        let map = self.pairs().filter(|(x, _)| set.contains(x)).collect();
        Self::from_map(w, map)
    }
}

/// A set of ordered pairs, each at distance at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedRelation {
    pub pairs: BTreeSet<(PointId, PointId)>,
    pub bound: u64,
}

impl BoundedRelation {
    /// Largest in- or out-degree.
    pub fn max_degree(&self) -> usize {
        let mut out: BTreeMap<PointId, usize> = BTreeMap::new();
        let mut inn: BTreeMap<PointId, usize> = BTreeMap::new();
        for &(x, y) in &self.pairs {
            *out.entry(x).or_default() += 1;
            *inn.entry(y).or_default() += 1;
        }
        out.values().chain(inn.values()).copied().max().unwrap_or(0)
    }
}

/// All ordered pairs at distance `<= n` among the points of `interior(n)`.
pub fn relation_at(w: &Window, n: u64) -> Result<BoundedRelation> {
    if n > w.horizon() {
        return Err(usage!("relation bound {n} exceeds the window horizon {}", w.horizon()));
    }
    let inner = w.interior(n);
    let limit = inner.len();
    let mut pairs = BTreeSet::new();
    for &x in &inner {
        // interior points form a prefix of the enumeration
        for y in w.neighbors(x, n) {
            if y.index() < limit {
                pairs.insert((x, y));
            }
        }
    }
    Ok(BoundedRelation { pairs, bound: n })
}

/// Splits a bounded relation into at most `rel.max_degree()` partial
/// translations whose graphs partition the relation.
///
/// The relation is a bipartite graph from sources to targets. It is padded
/// to a `Δ`-regular bipartite multigraph (a mirrored copy plus parallel
/// dummy edges), which has a perfect matching by König's theorem; removing
/// one perfect matching leaves a `(Δ-1)`-regular graph, so `Δ` rounds
/// exhaust it. The original edges of each round form one injective part.
pub fn decompose(rel: &BoundedRelation, w: &Window) -> Result<Vec<PartialTranslation>> {
    for &(x, y) in &rel.pairs {
        if x.index() >= w.len() || y.index() >= w.len() {
            return Err(usage!("pair ({x}, {y}) leaves the window"));
        }
        let d = w.distance(x, y);
        if d > rel.bound {
            return Err(usage!("pair ({x}, {y}) has distance {d} above the bound {}", rel.bound));
        }
    }
    let delta = rel.max_degree();
    if delta == 0 {
        return Ok(Vec::new());
    }
    // compact the vertices that occur
    let sources: Vec<PointId> = rel.pairs.iter().map(|p| p.0).collect::<BTreeSet<_>>().into_iter().collect();
    let targets: Vec<PointId> = rel.pairs.iter().map(|p| p.1).collect::<BTreeSet<_>>().into_iter().collect();
    let (s, t) = (sources.len(), targets.len());
    let src_ix: BTreeMap<PointId, usize> = sources.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let tgt_ix: BTreeMap<PointId, usize> = targets.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    // left = sources ++ target copies, right = targets ++ source copies
    let n = s + t;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut out_deg = vec![0usize; s];
    let mut in_deg = vec![0usize; t];
    for &(x, y) in &rel.pairs {
        let (i, j) = (src_ix[&x], tgt_ix[&y]);
        adj[i].push(j);
        adj[s + j].push(t + i);
        out_deg[i] += 1;
        in_deg[j] += 1;
    }
    for i in 0..s {
        adj[i].extend(core::iter::repeat_n(t + i, delta - out_deg[i]));
    }
    for j in 0..t {
        adj[s + j].extend(core::iter::repeat_n(j, delta - in_deg[j]));
    }

    let mut parts = Vec::new();
    for _ in 0..delta {
        let mates = hopcroft_karp(n, &adj);
        let mut pairs = Vec::new();
        for (u, m) in mates.iter().enumerate() {
            let v = m.ok_or_else(|| crate::Error::Invariant("regular bipartite graph without perfect matching".into()))?;
            if u < s && v < t {
                pairs.push((sources[u], targets[v]));
            }
            let pos = adj[u].iter().position(|&x| x == v).expect("matched edge is present");
            adj[u].remove(pos);
        }
        if !pairs.is_empty() {
            parts.push(PartialTranslation::new(w, pairs)?);
        }
    }
    Ok(parts)
}
