use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::space::{PointId, Window};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub members: Vec<PointId>,
    pub diameter: u64,
    /// Some member lies within the margin of the horizon sphere.
    pub touches_horizon: bool,
}

/// The `r`-chain classes of a set of window points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDecomposition {
    pub r: u64,
    pub margin: u64,
    pub components: Vec<Component>,
}

/// Classes of `members` (sorted ids) under chains of steps of length `<= r`
/// that stay inside `members`.
pub fn chain_components(w: &Window, members: &[PointId], r: u64, margin: u64) -> ComponentDecomposition {
    let mut slot = alloc::vec![usize::MAX; w.len()];
    for (i, &x) in members.iter().enumerate() {
        slot[x.index()] = i;
    }
    let mut uf = UnionFind::new(members.len());
    for (i, &x) in members.iter().enumerate() {
        for y in w.neighbors(x, r) {
            let j = slot[y.index()];
            if j != usize::MAX && j > i {
                uf.union(i, j);
            }
        }
    }
    let edge = w.horizon().saturating_sub(margin);
    let components = uf
        .classes()
        .into_iter()
        .map(|class| {
            let ids: Vec<PointId> = class.into_iter().map(|i| members[i]).collect();
            let touches_horizon = margin > w.horizon() || ids.iter().any(|&x| w.depth(x) > edge);
            Component { diameter: diameter(w, &ids), members: ids, touches_horizon }
        })
        .collect();
    ComponentDecomposition { r, margin, components }
}

pub(crate) fn diameter(w: &Window, ids: &[PointId]) -> u64 {
    let mut best = 0;
    for (i, &x) in ids.iter().enumerate() {
        for &y in &ids[i + 1..] {
            best = best.max(w.distance(x, y));
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Asdim0Row {
    pub r: u64,
    /// Largest diameter among components away from the horizon.
    pub max_interior_diameter: Option<u64>,
    pub interior_components: usize,
    pub touching_components: usize,
    /// A horizon-touching component reaches into the inner half of the
    /// window, so the window cannot bound its diameter.
    pub unbounded_at_window: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Asdim0Profile {
    pub margin: u64,
    pub rows: Vec<Asdim0Row>,
}

/// Component diameters of the whole window under `r`-chains, per scale.
///
/// The default margin is `max(scales) + 1`.
pub fn asdim0_profile(w: &Window, scales: &[u64], margin: Option<u64>) -> Result<Asdim0Profile> {
    let top = scales.iter().copied().max().ok_or_else(|| usage!("no scales given"))?;
    if top > w.horizon() {
        return Err(usage!("scale {top} exceeds the window horizon {}", w.horizon()));
    }
    let margin = margin.unwrap_or(top + 1);
    let all: Vec<PointId> = w.ids().collect();
    let rows = scales
        .iter()
        .map(|&r| asdim0_row(&chain_components(w, &all, r, margin), w))
        .collect();
    Ok(Asdim0Profile { margin, rows })
}

/// Summarizes one decomposition.
pub fn asdim0_row(dec: &ComponentDecomposition, w: &Window) -> Asdim0Row {
    let half = w.horizon() / 2;
    let (touching, inner): (Vec<&Component>, Vec<&Component>) =
        dec.components.iter().partition(|c| c.touches_horizon);
    Asdim0Row {
        r: dec.r,
        max_interior_diameter: inner.iter().map(|c| c.diameter).max(),
        interior_components: inner.len(),
        touching_components: touching.len(),
        unbounded_at_window: touching.iter().any(|c| c.members.iter().any(|&x| w.depth(x) <= half)),
    }
}

/// Horizon-touching `r`-components of the window outside `N_rho(basepoint)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndsReport {
    pub r: u64,
    pub rho: u64,
    pub margin: u64,
    pub count: usize,
    pub components: Vec<Component>,
}

/// Counts horizon-touching components of the punctured window. The default
/// margin is `r + 1`; `rho + r < horizon - margin` is required.
pub fn ends_report(w: &Window, r: u64, rho: u64, margin: Option<u64>) -> Result<EndsReport> {
    if r == 0 {
        return Err(usage!("chain step r must be at least 1"));
    }
    let margin = margin.unwrap_or(r + 1);
    if margin >= w.horizon() || rho + r >= w.horizon() - margin {
        return Err(usage!(
            "need rho + r < horizon - margin, got {rho} + {r} vs {} - {margin}",
            w.horizon()
        ));
    }
    let outside: Vec<PointId> = w.ids().filter(|&x| w.depth(x) > rho).collect();
    let dec = chain_components(w, &outside, r, margin);
    let count = dec.components.iter().filter(|c| c.touches_horizon).count();
    Ok(EndsReport { r, rho, margin, count, components: dec.components })
}

/// Two far-apart horizon-touching pieces of the punctured window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitWitness {
    pub r: u64,
    pub rho: u64,
    pub margin: u64,
    pub a: Vec<crate::space::Point>,
    pub b: Vec<crate::space::Point>,
}

/// `A` = the first horizon-touching component, `B` = the rest of the
/// punctured window. Since `A` is a full chain class, `N_r(A) ∩ B` is
/// empty outside `N_rho(basepoint)`.
pub fn split_witness(w: &Window, r: u64, rho: u64, margin: Option<u64>) -> Result<Option<SplitWitness>> {
    let report = ends_report(w, r, rho, margin)?;
    if report.count < 2 {
        return Ok(None);
    }
    let first = report.components.iter().position(|c| c.touches_horizon).expect("count >= 2");
    let a = report.components[first].members.iter().map(|&x| w.point(x)).collect();
    let mut b: Vec<PointId> = report
        .components
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != first)
        .flat_map(|(_, c)| c.members.iter().copied())
        .collect();
    b.sort_unstable();
    let b = b.into_iter().map(|x| w.point(x)).collect();
    Ok(Some(SplitWitness { r, rho, margin: report.margin, a, b }))
}
