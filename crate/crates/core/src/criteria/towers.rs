use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::matching::hopcroft_karp;
use crate::space::{Point, PointId, Window};

/// Parameters of the tower search. Level `j` (for `2 <= j <= levels`)
/// asks for `S_j <= d(y_1, y_j) <= B_j` with `S_j = s0 * 2^(j-1)` and
/// `B_j = c * S_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerParams {
    pub levels: u32,
    pub towers: usize,
    pub s0: u64,
    pub c: u64,
    pub node_budget: u64,
}

impl TowerParams {
    pub const DEFAULT_BUDGET: u64 = 200_000;

    pub fn new(levels: u32, towers: usize) -> Self {
        TowerParams { levels, towers, s0: 2, c: 4, node_budget: Self::DEFAULT_BUDGET }
    }

    /// `(S_j, B_j)` for `j = 2..=levels`.
    pub fn bounds(&self) -> Result<Vec<LevelBound>> {
        (2..=self.levels)
            .map(|j| {
                let lower = 2u64
                    .checked_pow(j - 1)
                    .and_then(|p| p.checked_mul(self.s0))
                    .ok_or_else(|| usage!("level {j} scale overflows"))?;
                let upper = lower.checked_mul(self.c).ok_or_else(|| usage!("level {j} bound overflows"))?;
                Ok(LevelBound { level: j, lower, upper })
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelBound {
    pub level: u32,
    pub lower: u64,
    pub upper: u64,
}

/// `towers.len()` disjoint tuples `(y_1, .., y_J)` with
/// `lower_j <= d(y_1, y_j) <= upper_j` for every listed level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerWitness {
    pub levels: u32,
    pub bounds: Vec<LevelBound>,
    pub towers: Vec<Vec<Point>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TowerOutcome {
    Found { witness: TowerWitness, nodes: u64 },
    /// `exhaustive` is false when the node budget ran out first.
    NoWitnessAtScale { exhaustive: bool, nodes: u64, viable_bases: usize },
}

struct Candidate {
    base: PointId,
    // per level j >= 2, the admissible y_j
    shells: Vec<Vec<PointId>>,
}

/// Searches the window for disjoint towers.
///
/// Bases are tried in canonical order with backtracking. A partial choice
/// is kept only if its slots `(b, j)` still admit a system of distinct
/// representatives, checked by bipartite matching, so any complete choice
/// yields a witness.
pub fn detect_m2(w: &Window, p: &TowerParams) -> Result<TowerOutcome> {
    if p.levels == 0 || p.towers == 0 {
        return Err(usage!("levels and tower count must be at least 1"));
    }
    if p.s0 == 0 || p.c == 0 {
        return Err(usage!("s0 and c must be at least 1"));
    }
    let bounds = p.bounds()?;
    let reach = bounds.last().map_or(0, |b| b.upper);
    if reach > w.horizon() {
        return Err(usage!("top bound B_J = {reach} exceeds the window horizon {}", w.horizon()));
    }
    let mut candidates = Vec::new();
    for b in w.ids() {
        let near = w.neighbors(b, reach);
        let shells: Vec<Vec<PointId>> = bounds
            .iter()
            .map(|lb| {
                near.iter()
                    .copied()
                    .filter(|&y| {
                        let d = w.distance(b, y);
                        lb.lower <= d && d <= lb.upper
                    })
                    .collect()
            })
            .collect();
        let c = Candidate { base: b, shells };
        if feasible(w, &[&c]) {
            candidates.push(c);
        }
    }
    let viable_bases = candidates.len();
    let mut search = Search { w, candidates: &candidates, need: p.towers, budget: p.node_budget, nodes: 0, exhausted: false };
    let mut chosen = Vec::new();
    let found = search.extend(0, &mut chosen);
    let nodes = search.nodes;
    if !found {
        return Ok(TowerOutcome::NoWitnessAtScale { exhaustive: !search.exhausted, nodes, viable_bases });
    }
    let picked: Vec<&Candidate> = chosen.iter().map(|&i| &candidates[i]).collect();
    let towers = assign(w, &picked)
        .ok_or_else(|| crate::Error::Invariant("accepted tower choice lost its matching".into()))?
        .into_iter()
        .map(|t| t.into_iter().map(|id| w.point(id)).collect())
        .collect();
    Ok(TowerOutcome::Found { witness: TowerWitness { levels: p.levels, bounds, towers }, nodes })
}

struct Search<'a> {
    w: &'a Window,
    candidates: &'a [Candidate],
    need: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn extend(&mut self, from: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == self.need {
            return true;
        }
        for i in from..self.candidates.len() {
            if self.candidates.len() - i < self.need - chosen.len() {
                break;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                return false;
            }
            self.nodes += 1;
            chosen.push(i);
            let picked: Vec<&Candidate> = chosen.iter().map(|&k| &self.candidates[k]).collect();
            if feasible(self.w, &picked) && self.extend(i + 1, chosen) {
                return true;
            }
            chosen.pop();
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

fn feasible(w: &Window, picked: &[&Candidate]) -> bool {
    assign(w, picked).is_some()
}

/// Distinct representatives for every slot, as towers `[b, y_2, .., y_J]`.
fn assign(w: &Window, picked: &[&Candidate]) -> Option<Vec<Vec<PointId>>> {
    let mut adj: Vec<Vec<usize>> = Vec::new();
    for c in picked {
        adj.push(vec![c.base.index()]);
        for shell in &c.shells {
            adj.push(shell.iter().map(|y| y.index()).collect());
        }
    }
    let mates = hopcroft_karp(w.len(), &adj);
    if mates.iter().any(Option::is_none) {
        return None;
    }
    let per = adj.len() / picked.len().max(1);
    Some(
        mates
            .chunks(per)
            .map(|tower| tower.iter().map(|m| PointId(m.expect("perfect") as u32)).collect())
            .collect(),
    )
}
