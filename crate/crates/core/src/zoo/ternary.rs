use alloc::vec::Vec;

use crate::space::{Coords, Space, SpaceKind};

/// Largest support index accepted by [`TernaryM`] windows.
pub const MAX_TERNARY_INDEX: u32 = 36;

/// Finite 0/1 sequences `(a_i)_{i>=1}` with `d(a, b) = |sum a_i 3^i - sum b_i 3^i|`.
///
/// A point is stored as its value `sum a_i 3^i`, i.e. a multiple of 3 whose
/// ternary digits are all 0 or 1. The empty support (value 0) is included.
#[derive(Clone, Debug, Default)]
pub struct TernaryM;

/// Value of the 0/1 sequence supported on `support` (indices from 1).
pub fn ternary_value(support: &[u32]) -> i64 {
    support.iter().map(|&i| 3i64.pow(i)).sum()
}

/// Support indices of a value in `M`, or `None` if it is not in `M`.
pub fn ternary_support(value: i64) -> Option<Vec<u32>> {
    if value < 0 {
        return None;
    }
    let mut v = value;
    let mut i = 0u32;
    let mut out = Vec::new();
    while v > 0 {
        match v % 3 {
            0 => {}
            1 if i > 0 => out.push(i),
            _ => return None,
        }
        v /= 3;
        i += 1;
    }
    Some(out)
}

fn collect_ternary(index: u32, partial: i128, lo: i128, hi: i128, out: &mut Vec<Coords>) {
    if index == 0 {
        if partial >= lo && partial <= hi {
            out.push(alloc::vec![partial as i64]);
        }
        return;
    }
    let weight = 3i128.pow(index);
    // sum of 3^j for 1 <= j < index
    let below = (weight - 3) / 2;
    for digit in [0i128, 1] {
        let next = partial + digit * weight;
        if next > hi || next + below < lo {
            continue;
        }
        collect_ternary(index - 1, next, lo, hi, out);
    }
}

impl Space for TernaryM {
    fn kind(&self) -> SpaceKind {
        SpaceKind::TernaryM
    }

    fn basepoint(&self) -> Coords {
        alloc::vec![0]
    }

    fn contains(&self, p: &[i64]) -> bool {
        p.len() == 1 && ternary_support(p[0]).is_some()
    }

    fn distance(&self, x: &[i64], y: &[i64]) -> u64 {
        x[0].abs_diff(y[0])
    }

    fn ball(&self, center: &[i64], radius: u64) -> Vec<Coords> {
        let c = center[0] as i128;
        let lo = (c - radius as i128).max(0);
        let hi = c + radius as i128;
        let mut top = 0u32;
        while top < MAX_TERNARY_INDEX + 1 && 3i128.pow(top + 1) <= hi {
            top += 1;
        }
        let mut out = Vec::new();
        collect_ternary(top, 0, lo, hi, &mut out);
        out
    }
}

fn ceil_sqrt(x: u64) -> u64 {
    let s = x.isqrt();
    if s * s < x {
        s + 1
    } else {
        s
    }
}

fn perfect_root(x: i64) -> Option<u64> {
    if x < 1 {
        return None;
    }
    let s = (x as u64).isqrt();
    (s * s == x as u64).then_some(s)
}

/// `{(n_1^2, ..., n_k^2) : 1 <= n_1 < ... < n_k}` inside `N^k` with l1.
#[derive(Clone, Debug)]
pub struct TernaryMk {
    pub k: usize,
}

impl TernaryMk {
    fn fill(&self, center: &[i64], prev: u64, budget: u64, cur: &mut Coords, out: &mut Vec<Coords>) {
        let i = cur.len();
        if i == self.k {
            out.push(cur.clone());
            return;
        }
        let c = center[i].max(0) as u64;
        let lo = c.saturating_sub(budget).max(1);
        let hi = c + budget;
        let n_lo = ceil_sqrt(lo).max(prev + 1);
        let n_hi = hi.isqrt();
        for n in n_lo..=n_hi {
            let sq = n * n;
            let cost = sq.abs_diff(center[i] as u64);
            if cost > budget {
                continue;
            }
            cur.push(sq as i64);
            self.fill(center, n, budget - cost, cur, out);
            cur.pop();
        }
    }
}

impl Space for TernaryMk {
    fn kind(&self) -> SpaceKind {
        SpaceKind::TernaryMk
    }

    fn basepoint(&self) -> Coords {
        (1..=self.k as i64).map(|n| n * n).collect()
    }

    fn contains(&self, p: &[i64]) -> bool {
        if p.len() != self.k {
            return false;
        }
        let mut prev = 0;
        for &c in p {
            match perfect_root(c) {
                Some(n) if n > prev => prev = n,
                _ => return false,
            }
        }
        true
    }

    fn distance(&self, x: &[i64], y: &[i64]) -> u64 {
        x.iter().zip(y).map(|(a, b)| a.abs_diff(*b)).sum()
    }

    fn ball(&self, center: &[i64], radius: u64) -> Vec<Coords> {
        let mut out = Vec::new();
        self.fill(center, 0, radius, &mut Vec::with_capacity(self.k), &mut out);
        out
    }
}

/// 2-adic valuation, so that `k` lies in the class `N_{v(k)+1}`.
pub fn dyadic_valuation(k: u64) -> u32 {
    k.trailing_zeros()
}

/// `{(1, k^2), (n, k^2) : n >= 1, k in N_n}` inside `N^2` with l1, where
/// `N_n = {2^(n-1) (2j - 1) : j >= 1}`.
///
/// Every `k` contributes `(1, k^2)` and, when `k` is even, its partner
/// `(v(k) + 1, k^2)` at distance `v(k)`.
#[derive(Clone, Debug, Default)]
pub struct M32;

impl M32 {
    pub fn partner(k: u64) -> i64 {
        dyadic_valuation(k) as i64 + 1
    }
}

impl Space for M32 {
    fn kind(&self) -> SpaceKind {
        SpaceKind::M32
    }

    fn basepoint(&self) -> Coords {
        alloc::vec![1, 1]
    }

    fn contains(&self, p: &[i64]) -> bool {
        if p.len() != 2 {
            return false;
        }
        match perfect_root(p[1]) {
            Some(k) => p[0] == 1 || p[0] == Self::partner(k),
            None => false,
        }
    }

    fn distance(&self, x: &[i64], y: &[i64]) -> u64 {
        x[0].abs_diff(y[0]) + x[1].abs_diff(y[1])
    }

    fn ball(&self, center: &[i64], radius: u64) -> Vec<Coords> {
        let c = center[1].max(0) as u64;
        let k_lo = ceil_sqrt(c.saturating_sub(radius).max(1));
        let k_hi = (c + radius).isqrt();
        let mut out = Vec::new();
        for k in k_lo..=k_hi {
            let b = (k * k) as i64;
            let mut firsts = alloc::vec![1];
            if k % 2 == 0 {
                firsts.push(Self::partner(k));
            }
            for a in firsts {
                let p = alloc::vec![a, b];
                if self.distance(center, &p) <= radius {
                    out.push(p);
                }
            }
        }
        out
    }
}
