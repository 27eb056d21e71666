//! Exact band operators on a window.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};
use crate::space::{PointId, PointSet, Window};
use crate::translations::PartialTranslation;

/// A finite matrix indexed by window points, with
/// `propagation = max d(x, y)` over its nonzero entries `(x, y)`.
///
/// Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandOperator {
    entries: BTreeMap<(PointId, PointId), Rational>,
    propagation: u64,
}

/// One entry of an operator dump: `(row, column, numerator, denominator)`.
pub type DumpEntry = (PointId, PointId, i128, i128);

impl BandOperator {
    pub fn zero() -> Self {
        BandOperator { entries: BTreeMap::new(), propagation: 0 }
    }

    pub fn from_entries(w: &Window, entries: impl IntoIterator<Item = ((PointId, PointId), Rational)>) -> Self {
        let mut map: BTreeMap<(PointId, PointId), Rational> = BTreeMap::new();
        for (k, v) in entries {
            *map.entry(k).or_insert_with(rational::zero) += v;
        }
        map.retain(|_, v| !v.is_zero());
        let propagation = map.keys().map(|&(x, y)| w.distance(x, y)).max().unwrap_or(0);
        BandOperator { entries: map, propagation }
    }

    /// `v_f`: the partial isometry with `(f(x), x)` entries equal to 1.
    pub fn vf(f: &PartialTranslation) -> Self {
        BandOperator {
            entries: f.pairs().map(|(x, y)| ((y, x), rational::one())).collect(),
            propagation: f.displacement(),
        }
    }

    /// The diagonal operator with the given values.
    pub fn diagonal(values: &BTreeMap<PointId, Rational>) -> Self {
        BandOperator {
            entries: values.iter().filter(|(_, v)| !v.is_zero()).map(|(&x, &v)| ((x, x), v)).collect(),
            propagation: 0,
        }
    }

    /// `1_A`.
    pub fn indicator(set: &PointSet) -> Self {
        BandOperator { entries: set.iter().map(|&x| ((x, x), rational::one())).collect(), propagation: 0 }
    }

    pub fn get(&self, row: PointId, col: PointId) -> Rational {
        self.entries.get(&(row, col)).copied().unwrap_or_else(rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((PointId, PointId), Rational)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn propagation(&self) -> u64 {
        self.propagation
    }

    pub fn measured_propagation(&self, w: &Window) -> u64 {
        self.entries.keys().map(|&(x, y)| w.distance(x, y)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self, w: &Window) -> Self {
        Self::from_entries(w, self.entries().chain(other.entries()))
    }

    pub fn scalar(&self, c: Rational, w: &Window) -> Self {
        Self::from_entries(w, self.entries().map(|(k, v)| (k, v * c)))
    }

    pub fn multiply(&self, other: &Self, w: &Window) -> Self {
        let mut by_row: BTreeMap<PointId, Vec<(PointId, Rational)>> = BTreeMap::new();
        for ((k, j), v) in other.entries() {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut out = Vec::new();
        for ((i, k), a) in self.entries() {
            if let Some(row) = by_row.get(&k) {
                out.extend(row.iter().map(|&(j, b)| ((i, j), a * b)));
            }
        }
        Self::from_entries(w, out)
    }

    /// Transpose (entries are real).
    pub fn adjoint(&self) -> Self {
        BandOperator {
            entries: self.entries().map(|((x, y), v)| ((y, x), v)).collect(),
            propagation: self.propagation,
        }
    }

    /// The conditional expectation onto diagonals.
    pub fn expectation(&self) -> DiagonalOperator {
        DiagonalOperator { values: self.entries().filter(|((x, y), _)| x == y).map(|((x, _), v)| (x, v)).collect() }
    }

    /// Whether `E(a* a)` vanishes on `f`, i.e. every column of `a` at a point
    /// of `f` is zero.
    pub fn in_ideal(&self, f: &PointSet) -> bool {
        let mut norms: BTreeMap<PointId, Rational> = BTreeMap::new();
        for ((_, col), v) in self.entries() {
            if f.contains(&col) {
                *norms.entry(col).or_insert_with(rational::zero) += v * v;
            }
        }
        norms.values().all(Zero::is_zero)
    }

    pub fn dump(&self) -> Vec<DumpEntry> {
        self.entries().map(|((x, y), v)| (x, y, *v.numer(), *v.denom())).collect()
    }
}

/// `E(a^* a)` restricted to `F` is zero.
pub fn ideal_membership(a: &BandOperator, f: &PointSet) -> bool {
    a.in_ideal(f)
}

/// Diagonal operator; absent points are 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalOperator {
    pub values: BTreeMap<PointId, Rational>,
}

impl DiagonalOperator {
    pub fn indicator(set: &PointSet) -> Self {
        DiagonalOperator { values: set.iter().map(|&x| (x, rational::one())).collect() }
    }

    pub fn get(&self, x: PointId) -> Rational {
        self.values.get(&x).copied().unwrap_or_else(rational::zero)
    }

    pub fn support(&self) -> PointSet {
        self.values.iter().filter(|(_, v)| !v.is_zero()).map(|(&x, _)| x).collect()
    }

    pub fn to_band(&self) -> BandOperator {
        BandOperator::diagonal(&self.values)
    }

    /// Equality as functions, ignoring stored zeros.
    pub fn same_as(&self, other: &Self) -> bool {
        let keys: PointSet = self.values.keys().chain(other.values.keys()).copied().collect();
        keys.into_iter().all(|x| self.get(x) == other.get(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn shift_isometry_identities() {
        let w = zoo::make_grid(false, 1, 12).unwrap();
        let f = PartialTranslation::from_coords(&w, w.ids(), |c| Some(alloc::vec![c[0] + 2])).unwrap();
        let v = BandOperator::vf(&f);
        assert_eq!(v.propagation(), 2);
        assert_eq!(v.adjoint().multiply(&v, &w), BandOperator::indicator(&f.domain()));
        assert_eq!(v.multiply(&v.adjoint(), &w), BandOperator::indicator(&f.image()));
        assert!(v.expectation().support().is_empty());
        let e = PartialTranslation::identity(&f.domain());
        assert!(BandOperator::vf(&e).expectation().same_as(&DiagonalOperator::indicator(&f.domain())));
    }

    #[test]
    fn ideal_membership_reads_columns() {
        let f: PointSet = [PointId(3)].into_iter().collect();
        assert!(!ideal_membership(&BandOperator::indicator(&f), &f));
        let other: PointSet = [PointId(7)].into_iter().collect();
        assert!(ideal_membership(&BandOperator::indicator(&other), &f));
    }
}
