use alloc::vec::Vec;

use crate::space::{Coords, Space, SpaceKind};

/// The free group on `rank` generators with the word metric.
///
/// Points are reduced words; generator `i` is the letter `i` and its
/// inverse is `-i`, for `i` in `1..=rank`. The distance `|u^{-1} v|` is
/// `|u| + |v| - 2 * lcp(u, v)`.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    pub rank: u32,
}

pub(crate) fn common_prefix(u: &[i64], v: &[i64]) -> usize {
    u.iter().zip(v).take_while(|(a, b)| a == b).count()
}

/// Free reduction of `u v` where both are reduced.
pub fn multiply(u: &[i64], v: &[i64]) -> Coords {
    let mut out: Coords = u.to_vec();
    for &l in v {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl FreeGroup {
    fn letters(&self) -> impl Iterator<Item = i64> {
        let n = self.rank as i64;
        (1..=n).flat_map(|g| [g, -g])
    }

    fn grow(&self, word: &mut Coords, budget: u64, banned: [Option<i64>; 2], out: &mut Vec<Coords>) {
        for l in self.letters() {
            if banned.contains(&Some(l)) {
                continue;
            }
            word.push(l);
            out.push(word.clone());
            if budget > 1 {
                self.grow(word, budget - 1, [Some(-l), None], out);
            }
            word.pop();
        }
    }
}

impl Space for FreeGroup {
    fn kind(&self) -> SpaceKind {
        SpaceKind::FreeGroup
    }

    fn basepoint(&self) -> Coords {
        Vec::new()
    }

    fn contains(&self, p: &[i64]) -> bool {
        let n = self.rank as i64;
        p.iter().all(|&l| l != 0 && l.abs() <= n) && p.windows(2).all(|w| w[0] != -w[1])
    }

    fn distance(&self, x: &[i64], y: &[i64]) -> u64 {
        let c = common_prefix(x, y);
        (x.len() + y.len() - 2 * c) as u64
    }

    fn ball(&self, center: &[i64], radius: u64) -> Vec<Coords> {
        // Points at distance k + l: drop k letters from the end of the
        // center, then append l letters that neither cancel nor restore
        // the dropped letter.
        let mut out = Vec::new();
        let len = center.len();
        let max_drop = (radius as usize).min(len);
        for k in 0..=max_drop {
            let mut word: Coords = center[..len - k].to_vec();
            out.push(word.clone());
            let budget = radius - k as u64;
            if budget == 0 {
                continue;
            }
            let cancel = word.last().map(|&l| -l);
            let restore = if k > 0 { Some(center[len - k]) } else { None };
            self.grow(&mut word, budget, [cancel, restore], &mut out);
        }
        out
    }
}
