use alloc::vec::Vec;

use crate::space::{Coords, Space, SpaceKind};

/// `N^k` or `Z^k` with the l1 metric.
#[derive(Clone, Debug)]
pub struct Grid {
    pub signed: bool,
    pub dims: usize,
}

impl Space for Grid {
    fn kind(&self) -> SpaceKind {
        SpaceKind::Grid
    }

    fn basepoint(&self) -> Coords {
        alloc::vec![0; self.dims]
    }

    fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.dims && (self.signed || p.iter().all(|&c| c >= 0))
    }

    fn distance(&self, x: &[i64], y: &[i64]) -> u64 {
        x.iter().zip(y).map(|(a, b)| a.abs_diff(*b)).sum()
    }

    fn ball(&self, center: &[i64], radius: u64) -> Vec<Coords> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.dims);
        self.fill(center, radius, &mut cur, &mut out);
        out
    }
}

impl Grid {
    fn fill(&self, center: &[i64], budget: u64, cur: &mut Coords, out: &mut Vec<Coords>) {
        let i = cur.len();
        if i == self.dims {
            out.push(cur.clone());
            return;
        }
        let b = budget as i64;
        for delta in -b..=b {
            let c = center[i] + delta;
            if !self.signed && c < 0 {
                continue;
            }
            cur.push(c);
            self.fill(center, budget - delta.unsigned_abs(), cur, out);
            cur.pop();
        }
    }
}
