//! Exact finite windows of uniformly locally finite metric spaces.

mod ops;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

pub use ops::{
    check_metric, check_metric_with, neighborhood, separated_partition, ulf_profile,
    MetricReport, MetricViolation, Partition,
};

/// Space-specific integer coordinates of a point.
pub type Coords = Vec<i64>;

/// Index of a point inside one [`Window`], in canonical enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub u32);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub type PointSet = BTreeSet<PointId>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub id: PointId,
    pub coords: Coords,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Grid,
    FreeGroup,
    TernaryM,
    TernaryMk,
    M32,
    Clusters,
    CoarseUnion,
}

/// An ambient metric space given by an exact oracle.
///
/// Implementations must return exact ambient distances, and `ball` must
/// return every ambient point within `radius` of `center` (in any order).
pub trait Space: Send + Sync + fmt::Debug {
    fn kind(&self) -> SpaceKind;
    fn basepoint(&self) -> Coords;
    fn contains(&self, p: &[i64]) -> bool;
    fn distance(&self, x: &[i64], y: &[i64]) -> u64;
    fn ball(&self, center: &[i64], radius: u64) -> Vec<Coords>;
}

/// A finite window around the basepoint.
///
/// Invariant: every ambient point within `horizon` of the basepoint is a
/// window point. Most constructors produce exactly that ball; cluster
/// windows keep whole clusters, so some points can lie beyond the horizon.
/// Those are never interior.
#[derive(Clone)]
pub struct Window {
    space: Arc<dyn Space>,
    horizon: u64,
    points: Vec<Coords>,
    depth: Vec<u64>,
    index: BTreeMap<Coords, PointId>,
    basepoint: PointId,
}

impl fmt::Debug for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Window")
            .field("space", &self.space)
            .field("horizon", &self.horizon)
            .field("points", &self.points.len())
            .finish()
    }
}

impl Window {
    /// The metric ball of radius `horizon` around the space's basepoint.
    pub fn ball(space: Arc<dyn Space>, horizon: u64) -> Self {
        let base = space.basepoint();
        let points = space.ball(&base, horizon);
        Self::assemble(space, points, horizon)
    }

    /// A window holding `points`, which must contain the ball of radius
    /// `horizon` around the basepoint.
    pub fn covering(space: Arc<dyn Space>, points: Vec<Coords>, horizon: u64) -> Result<Self> {
        let base = space.basepoint();
        if !points.contains(&base) {
            return Err(usage!("window points must include the basepoint {base:?}"));
        }
        let w = Self::assemble(space, points, horizon);
        for p in w.space.ball(&base, horizon) {
            if w.id_of(&p).is_none() {
                return Err(usage!("window misses point {p:?} within the horizon"));
            }
        }
        Ok(w)
    }

    fn assemble(space: Arc<dyn Space>, points: Vec<Coords>, horizon: u64) -> Self {
        let base = space.basepoint();
        let mut keyed: Vec<(u64, Coords)> = points
            .into_iter()
            .map(|p| (space.distance(&base, &p), p))
            .collect();
        keyed.sort();
        keyed.dedup();
        let mut depth = Vec::with_capacity(keyed.len());
        let mut pts = Vec::with_capacity(keyed.len());
        let mut index = BTreeMap::new();
        for (i, (d, p)) in keyed.into_iter().enumerate() {
            index.insert(p.clone(), PointId(i as u32));
            depth.push(d);
            pts.push(p);
        }
        let basepoint = index[&base];
        Window { space, horizon, points: pts, depth, index, basepoint }
    }

    pub fn space(&self) -> &Arc<dyn Space> {
        &self.space
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn basepoint(&self) -> PointId {
        self.basepoint
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = PointId> + ExactSizeIterator + '_ {
        (0..self.points.len() as u32).map(PointId)
    }

    pub fn coords(&self, id: PointId) -> &[i64] {
        &self.points[id.index()]
    }

    pub fn point(&self, id: PointId) -> Point {
        Point { id, coords: self.points[id.index()].clone() }
    }

    pub fn id_of(&self, coords: &[i64]) -> Option<PointId> {
        self.index.get(coords).copied()
    }

    /// Distance from the basepoint.
    pub fn depth(&self, id: PointId) -> u64 {
        self.depth[id.index()]
    }

    pub fn distance(&self, x: PointId, y: PointId) -> u64 {
        if x == y {
            return 0;
        }
        self.space.distance(&self.points[x.index()], &self.points[y.index()])
    }

    /// Distance between two points, checking that both belong to this window.
    pub fn distance_between(&self, x: &Point, y: &Point) -> Result<u64> {
        for p in [x, y] {
            if self.points.get(p.id.index()) != Some(&p.coords) {
                return Err(usage!("point {} {:?} does not belong to this window", p.id, p.coords));
            }
        }
        Ok(self.distance(x.id, y.id))
    }

    /// Points at distance at most `horizon - margin` from the basepoint.
    pub fn is_interior(&self, id: PointId, margin: u64) -> bool {
        margin <= self.horizon && self.depth(id) <= self.horizon - margin
    }

    pub fn interior(&self, margin: u64) -> Vec<PointId> {
        if margin > self.horizon {
            return Vec::new();
        }
        let limit = self.horizon - margin;
        // depth is sorted, so the interior is a prefix
        let end = self.depth.partition_point(|&d| d <= limit);
        (0..end as u32).map(PointId).collect()
    }

    /// Window points within `r` of `x`, sorted.
    pub fn neighbors(&self, x: PointId, r: u64) -> Vec<PointId> {
        let mut out: Vec<PointId> = self
            .space
            .ball(&self.points[x.index()], r)
            .iter()
            .filter_map(|p| self.id_of(p))
            .collect();
        out.sort_unstable();
        out
    }

    /// `min_{a in set} d(x, a)`, or `None` for an empty set.
    pub fn distance_to_set(&self, x: PointId, set: &[PointId]) -> Option<u64> {
        set.iter().map(|&a| self.distance(x, a)).min()
    }
}
