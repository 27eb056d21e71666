//! Standalone certificate checkers.
//!
//! Each checker recomputes every claimed distance with the window's oracle
//! and shares no code with the searches that produced the certificate.
//! A rejection carries a human-readable reason.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;

use crate::criteria::{PairFamilyWitness, SplitWitness, TowerWitness};
use crate::space::{Partition, Point, PointId, Window};
use crate::translations::{BoundedRelation, PartialTranslation};

pub type Verdict = core::result::Result<(), String>;

fn dist(w: &Window, x: &Point, y: &Point) -> core::result::Result<u64, String> {
    w.distance_between(x, y).map_err(|e| format!("{e}"))
}

fn member(w: &Window, p: &Point) -> Verdict {
    match w.id_of(&p.coords) {
        Some(id) if id == p.id => Ok(()),
        _ => Err(format!("point {} {:?} is not in the window", p.id, p.coords)),
    }
}

/// Classes cover the window exactly and are `separation`-separated.
pub fn partition(w: &Window, p: &Partition) -> Verdict {
    let mut seen = alloc::vec![false; w.len()];
    for class in &p.classes {
        for (i, &x) in class.iter().enumerate() {
            if x.index() >= w.len() {
                return Err(format!("{x} is not in the window"));
            }
            if core::mem::replace(&mut seen[x.index()], true) {
                return Err(format!("{x} lies in two classes"));
            }
            for &y in &class[i + 1..] {
                let d = w.distance(x, y);
                if d <= p.separation {
                    return Err(format!("{x} and {y} share a class at distance {d}"));
                }
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(i) => Err(format!("#{i} is in no class")),
        None => Ok(()),
    }
}

/// The parts' graphs partition the relation, each is injective with an
/// exactly recorded displacement within the bound, and there are at most
/// `Δ` of them.
pub fn decomposition(w: &Window, rel: &BoundedRelation, parts: &[PartialTranslation]) -> Verdict {
    let mut covered = BTreeSet::new();
    for (k, f) in parts.iter().enumerate() {
        let mut image = BTreeSet::new();
        let mut worst = 0;
        for (x, y) in f.pairs() {
            if !image.insert(y) {
                return Err(format!("part {k} hits {y} twice"));
            }
            if !covered.insert((x, y)) {
                return Err(format!("pair ({x}, {y}) appears in two parts"));
            }
            worst = worst.max(w.distance(x, y));
        }
        if worst != f.displacement() {
            return Err(format!("part {k} records displacement {} but has {worst}", f.displacement()));
        }
        if worst > rel.bound {
            return Err(format!("part {k} moves points by {worst} > {}", rel.bound));
        }
    }
    if covered != rel.pairs {
        return Err(format!("parts cover {} pairs, relation has {}", covered.len(), rel.pairs.len()));
    }
    let mut out_deg: BTreeMap<PointId, usize> = BTreeMap::new();
    let mut in_deg: BTreeMap<PointId, usize> = BTreeMap::new();
    for &(x, y) in &rel.pairs {
        *out_deg.entry(x).or_default() += 1;
        *in_deg.entry(y).or_default() += 1;
    }
    let delta = out_deg.values().chain(in_deg.values()).copied().max().unwrap_or(0);
    if parts.len() > delta {
        return Err(format!("{} parts exceed the degree bound {delta}", parts.len()));
    }
    Ok(())
}

/// Every tower satisfies its level bounds and all points are distinct.
pub fn tower(w: &Window, wit: &TowerWitness) -> Verdict {
    let levels = wit.levels as usize;
    if wit.bounds.len() + 1 != levels.max(1) {
        return Err(format!("{} bounds listed for {levels} levels", wit.bounds.len()));
    }
    for (i, b) in wit.bounds.iter().enumerate() {
        if b.level as usize != i + 2 || b.lower > b.upper {
            return Err(format!("malformed bound for level {}", b.level));
        }
        if i > 0 && wit.bounds[i - 1].lower >= b.lower {
            return Err(format!("lower bounds do not increase at level {}", b.level));
        }
    }
    let mut seen = BTreeSet::new();
    for (t, tower) in wit.towers.iter().enumerate() {
        if tower.len() != levels {
            return Err(format!("tower {t} has {} points, expected {levels}", tower.len()));
        }
        for p in tower {
            member(w, p)?;
            if !seen.insert(p.id) {
                return Err(format!("point {} is used twice", p.id));
            }
        }
        for (b, y) in wit.bounds.iter().zip(&tower[1..]) {
            let d = dist(w, &tower[0], y)?;
            if d < b.lower || d > b.upper {
                return Err(format!("tower {t} level {}: distance {d} outside [{}, {}]", b.level, b.lower, b.upper));
            }
        }
    }
    Ok(())
}

/// Every scale has the promised number of disjoint pairs at distance in
/// `(r, bound]`.
pub fn pair_family(w: &Window, wit: &PairFamilyWitness) -> Verdict {
    for fam in &wit.families {
        if fam.pairs.len() != wit.count {
            return Err(format!("scale {} has {} pairs, expected {}", fam.r, fam.pairs.len(), wit.count));
        }
        let mut seen = BTreeSet::new();
        for (x, y) in &fam.pairs {
            member(w, x)?;
            member(w, y)?;
            if !seen.insert(x.id) || !seen.insert(y.id) {
                return Err(format!("scale {}: a point is reused", fam.r));
            }
            let d = dist(w, x, y)?;
            if d <= fam.r || d > wit.bound {
                return Err(format!("scale {}: pair {}-{} at distance {d}", fam.r, x.id, y.id));
            }
        }
    }
    Ok(())
}

/// `A` and `B` partition the window outside `N_rho(basepoint)`, no point of
/// `B` is within `r` of `A`, and both reach the horizon margin.
pub fn split(w: &Window, wit: &SplitWitness) -> Verdict {
    let base = w.point(w.basepoint());
    let mut side: BTreeMap<PointId, bool> = BTreeMap::new();
    for (flag, set) in [(true, &wit.a), (false, &wit.b)] {
        for p in set {
            member(w, p)?;
            if dist(w, &base, p)? <= wit.rho {
                return Err(format!("{} lies inside the puncture", p.id));
            }
            if side.insert(p.id, flag).is_some() {
                return Err(format!("{} is listed twice", p.id));
            }
        }
    }
    for x in w.ids() {
        let outside = w.distance(w.basepoint(), x) > wit.rho;
        if outside != side.contains_key(&x) {
            return Err(format!("{x} is not covered correctly"));
        }
    }
    for a in &wit.a {
        for c in w.space().ball(&a.coords, wit.r) {
            if let Some(y) = w.id_of(&c) {
                if side.get(&y) == Some(&false) {
                    return Err(format!("{} in A is within {} of {y} in B", a.id, wit.r));
                }
            }
        }
    }
    let edge = w.horizon().saturating_sub(wit.margin);
    for (name, set) in [("A", &wit.a), ("B", &wit.b)] {
        if !set.iter().any(|p| w.distance(w.basepoint(), p.id) > edge) {
            return Err(format!("{name} does not reach the horizon margin"));
        }
    }
    Ok(())
}
