//! Randomized checks of the partial-isometry identities on a window.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::band::{BandOperator, DiagonalOperator};
use crate::error::{usage, Result};
use crate::space::{PointId, PointSet, Window};
use crate::translations::PartialTranslation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub passed: usize,
    pub failed: usize,
    /// Index of the first failing sample.
    pub first_failure: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub samples: usize,
    pub seed: u64,
    pub reach: u64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }
}

const IDENTITIES: [&str; 7] = [
    "vf* vf = 1_dom(f)",
    "vf vf* = 1_im(f)",
    "vf vf* vf = vf",
    "vf vg = v(f.g)",
    "E(vf) = 1_Fix(f)",
    "E(vg* vf vg) = 1_Fix(g^-1 f g)",
    "prop(vf vg) <= prop(vf) + prop(vg)",
];

/// A random partial translation moving points by at most `reach`.
///
/// Points are visited in random order; each is kept with probability 2/3
/// and sent to a random unused window point within `reach`.
pub fn random_translation<R: Rng>(w: &Window, reach: u64, rng: &mut R) -> PartialTranslation {
    let mut ids: Vec<PointId> = w.ids().collect();
    ids.shuffle(rng);
    let mut used = PointSet::new();
    let mut pairs = Vec::new();
    for x in ids {
        if rng.gen_range(0..3) == 0 {
            continue;
        }
        let free: Vec<PointId> = w.neighbors(x, reach).into_iter().filter(|y| !used.contains(y)).collect();
        if let Some(&y) = free.choose(rng) {
            used.insert(y);
            pairs.push((x, y));
        }
    }
    PartialTranslation::new(w, pairs).expect("pairs are injective and within the window")
}

fn holds(i: usize, f: &PartialTranslation, g: &PartialTranslation, w: &Window) -> bool {
    let (vf, vg) = (BandOperator::vf(f), BandOperator::vf(g));
    match i {
        0 => vf.adjoint().multiply(&vf, w) == BandOperator::indicator(&f.domain()),
        1 => vf.multiply(&vf.adjoint(), w) == BandOperator::indicator(&f.image()),
        2 => vf.multiply(&vf.adjoint(), w).multiply(&vf, w) == vf,
        3 => vf.multiply(&vg, w) == BandOperator::vf(&f.compose(g, w)),
        4 => vf.expectation().same_as(&DiagonalOperator::indicator(&f.fixed_points())),
        5 => {
            let conj = vg.adjoint().multiply(&vf, w).multiply(&vg, w);
            let fixed = g.invert().compose(f, w).compose(g, w).fixed_points();
            conj.expectation().same_as(&DiagonalOperator::indicator(&fixed))
        }
        _ => {
            let prod = vf.multiply(&vg, w);
            prod.propagation() <= vf.propagation() + vg.propagation()
                && prod.propagation() == prod.measured_propagation(w)
        }
    }
}

/// Checks every identity on `samples` random pairs `(f, g)`.
pub fn check_identities(w: &Window, samples: usize, reach: u64, seed: u64) -> Result<IdentityReport> {
    if samples == 0 {
        return Err(usage!("samples must be at least 1"));
    }
    if reach == 0 {
        return Err(usage!("reach must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks: Vec<IdentityCheck> = IDENTITIES
        .iter()
        .map(|&name| IdentityCheck { identity: name.into(), passed: 0, failed: 0, first_failure: None })
        .collect();
    for s in 0..samples {
        let f = random_translation(w, reach, &mut rng);
        let g = random_translation(w, reach, &mut rng);
        for (i, c) in checks.iter_mut().enumerate() {
            if holds(i, &f, &g, w) {
                c.passed += 1;
            } else {
                c.failed += 1;
                c.first_failure.get_or_insert(s);
            }
        }
    }
    Ok(IdentityReport { samples, seed, reach, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn identities_hold_on_the_naturals() {
        let w = zoo::make_grid(false, 1, 30).unwrap();
        let report = check_identities(&w, 10, 4, 1).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.checks.len(), IDENTITIES.len());
        assert!(check_identities(&w, 0, 4, 1).is_err());
    }

    #[test]
    fn random_translations_respect_reach() {
        let w = zoo::make_grid(true, 2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let f = random_translation(&w, 2, &mut rng);
            assert!(f.displacement() <= 2);
            assert_eq!(f.displacement(), f.measured_displacement(&w));
        }
    }
}
