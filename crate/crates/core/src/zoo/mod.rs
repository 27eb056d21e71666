//! Constructors for the concrete spaces and their windows.
//!
//! | kind | points | metric |
//! |------|--------|--------|
//! | `grid` | `N^k` or `Z^k` | l1 |
//! | `free_group` | reduced words in `F_n` | word metric |
//! | `M` | finite 0/1 ternary sequences | difference of values |
//! | `Mk` | `(n_1^2, .., n_k^2)`, `n_1 < .. < n_k` | l1 |
//! | `M32` | `(1, k^2)` and `(v(k)+1, k^2)` | l1 |
//! | `clusters` | copies of a finite pattern | star metric |
//! | `coarse_union` | finitely many spaces | star metric |
//!
//! Every window distance is the exact ambient distance.

mod free_group;
mod grid;
mod ternary;
mod union;

use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::space::{Space, Window};

pub use free_group::{multiply as free_multiply, FreeGroup};
pub use grid::Grid;
pub use ternary::{dyadic_valuation, ternary_support, ternary_value, TernaryM, TernaryMk, M32, MAX_TERNARY_INDEX};
pub use union::{ClusterSpace, CoarseUnion, Growth, Pattern};

/// `N^k` (`signed = false`) or `Z^k` under l1, ball of radius `horizon`
/// around the origin.
pub fn make_grid(signed: bool, dims: usize, horizon: u64) -> Result<Window> {
    if dims == 0 {
        return Err(usage!("grid dimension must be at least 1"));
    }
    Ok(Window::ball(Arc::new(Grid { signed, dims }), horizon))
}

/// Ball of radius `horizon` around the identity of the free group of rank
/// `rank`.
pub fn make_free_group(rank: u32, horizon: u64) -> Result<Window> {
    if rank == 0 {
        return Err(usage!("free group rank must be at least 1"));
    }
    Ok(Window::ball(Arc::new(FreeGroup { rank }), horizon))
}

/// All supports inside `{1, .., max_index}`.
///
/// This set is exactly the metric ball of radius `3^(max_index+1) - 1`
/// around the empty support, which is the recorded horizon.
pub fn make_m(max_index: u32) -> Result<Window> {
    if max_index == 0 || max_index > MAX_TERNARY_INDEX {
        return Err(usage!("M support index must lie in 1..={MAX_TERNARY_INDEX}"));
    }
    Ok(Window::ball(Arc::new(TernaryM), 3u64.pow(max_index + 1) - 1))
}

pub fn make_mk(k: usize, horizon: u64) -> Result<Window> {
    if k == 0 {
        return Err(usage!("Mk needs k >= 1"));
    }
    Ok(Window::ball(Arc::new(TernaryMk { k }), horizon))
}

pub fn make_m32(horizon: u64) -> Result<Window> {
    if horizon == 0 {
        return Err(usage!("M32 horizon must be at least 1"));
    }
    Ok(Window::ball(Arc::new(M32), horizon))
}

/// Clusters `1..=count`, kept whole.
///
/// The horizon is `gap(1) + gap(count+1) - 1`: every point of a later
/// cluster is farther than that from the basepoint, so the window still
/// contains the full ball.
pub fn make_cluster_space(pattern: Pattern, gap: Growth, count: u64) -> Result<Window> {
    gap.validate()?;
    if count == 0 {
        return Err(usage!("cluster count must be at least 1"));
    }
    let horizon = (gap.at(1) + gap.at(count + 1)).saturating_sub(1);
    let k = pattern.len() as i64;
    let points = (1..=count as i64)
        .flat_map(|n| (0..k).map(move |q| alloc::vec![n, q]))
        .collect();
    let space = ClusterSpace { pattern: Arc::new(pattern), gap };
    Window::covering(Arc::new(space), points, horizon)
}

pub fn make_coarse_union(components: Vec<Arc<dyn Space>>, spoke: Growth, horizon: u64) -> Result<Window> {
    Ok(Window::ball(Arc::new(CoarseUnion::new(components, spoke)?), horizon))
}

/// Serializable description of an ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum SpaceSpec {
    #[serde(rename = "grid")]
    Grid { signed: bool, dims: usize },
    #[serde(rename = "free_group")]
    FreeGroup { rank: u32 },
    #[serde(rename = "M")]
    TernaryM,
    #[serde(rename = "Mk")]
    TernaryMk { k: usize },
    #[serde(rename = "M32")]
    M32,
    #[serde(rename = "clusters")]
    Clusters { pattern: Pattern, gap: Growth },
    #[serde(rename = "coarse_union")]
    CoarseUnion { components: Vec<SpaceSpec>, spoke: Growth },
}

impl SpaceSpec {
    pub fn build(&self) -> Result<Arc<dyn Space>> {
        Ok(match self {
            SpaceSpec::Grid { signed, dims } => {
                if *dims == 0 {
                    return Err(usage!("grid dimension must be at least 1"));
                }
                Arc::new(Grid { signed: *signed, dims: *dims })
            }
            SpaceSpec::FreeGroup { rank } => {
                if *rank == 0 {
                    return Err(usage!("free group rank must be at least 1"));
                }
                Arc::new(FreeGroup { rank: *rank })
            }
            SpaceSpec::TernaryM => Arc::new(TernaryM),
            SpaceSpec::TernaryMk { k } => {
                if *k == 0 {
                    return Err(usage!("Mk needs k >= 1"));
                }
                Arc::new(TernaryMk { k: *k })
            }
            SpaceSpec::M32 => Arc::new(M32),
            SpaceSpec::Clusters { pattern, gap } => {
                gap.validate()?;
                Arc::new(ClusterSpace { pattern: Arc::new(pattern.clone()), gap: gap.clone() })
            }
            SpaceSpec::CoarseUnion { components, spoke } => {
                let parts = components.iter().map(SpaceSpec::build).collect::<Result<Vec<_>>>()?;
                Arc::new(CoarseUnion::new(parts, spoke.clone())?)
            }
        })
    }
}

/// A space together with its window size.
///
/// `horizon` is the maximal support index for `M`, the cluster count for
/// `clusters`, and the metric radius for everything else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub space: SpaceSpec,
    pub horizon: u64,
}

impl WindowSpec {
    pub fn build(&self) -> Result<Window> {
        match &self.space {
            SpaceSpec::TernaryM => {
                let h = u32::try_from(self.horizon).map_err(|_| usage!("M support index too large"))?;
                make_m(h)
            }
            SpaceSpec::Clusters { pattern, gap } => make_cluster_space(pattern.clone(), gap.clone(), self.horizon),
            other => Ok(Window::ball(other.build()?, self.horizon)),
        }
    }
}
