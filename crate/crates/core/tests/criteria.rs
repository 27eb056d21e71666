use std::collections::{BTreeSet, VecDeque};

use coarsekit_core::criteria::{
    asdim0_profile, chain_components, detect_m2, detect_m32, divergence_row, ends_report, higson_from_separated,
    higson_max, separation_at, separation_profile, split_witness, variation_report, ScaleOutcome, Separation,
    TowerOutcome, TowerParams, Trend,
};
use coarsekit_core::zoo::{self, Growth, Pattern};
use coarsekit_core::{rational, verify, PointId, PointSet, Rational, Window};

/// `min d(b, y)` over `b` in the r-ball of `x` and `y` outside it, by
/// scanning the whole window.
fn brute_separation(w: &Window, x: PointId, r: u64) -> Option<u64> {
    let ball: Vec<PointId> = w.ids().filter(|&y| w.distance(x, y) <= r).collect();
    let rest: Vec<PointId> = w.ids().filter(|&y| w.distance(x, y) > r).collect();
    ball.iter().flat_map(|&b| rest.iter().map(move |&y| (b, y))).map(|(b, y)| w.distance(b, y)).min()
}

fn agrees_with_brute_force(w: &Window, r: u64) {
    let profile = separation_profile(w, r).unwrap();
    assert_eq!(profile.values.len(), w.interior(2 * r).len());
    for (&x, &s) in &profile.values {
        let truth = brute_separation(w, x, r);
        let bound = w.horizon() + 1 - w.depth(x) - r;
        match s {
            Separation::Exact(v) => assert_eq!(Some(v), truth, "{:?}", w.coords(x)),
            Separation::ExceedsWindow(b) => {
                assert_eq!(b, bound);
                assert!(truth.is_none_or(|t| t >= b), "{:?}", w.coords(x));
            }
        }
        if let Some(t) = truth {
            if t < bound {
                assert_eq!(s, Separation::Exact(t));
            }
        }
    }
}

#[test]
fn separation_matches_brute_force_on_small_windows() {
    agrees_with_brute_force(&zoo::make_grid(false, 1, 40).unwrap(), 3);
    agrees_with_brute_force(&zoo::make_grid(true, 2, 8).unwrap(), 2);
    agrees_with_brute_force(&zoo::make_free_group(2, 5).unwrap(), 1);
    agrees_with_brute_force(&zoo::make_m(6).unwrap(), 4);
    agrees_with_brute_force(&zoo::make_mk(2, 300).unwrap(), 6);
    agrees_with_brute_force(&zoo::make_m32(900).unwrap(), 3);
    let clusters = zoo::make_cluster_space(Pattern::path(2).unwrap(), Growth::linear(2, 0), 12).unwrap();
    agrees_with_brute_force(&clusters, 1);
}

#[test]
fn cluster_separation_is_the_gap() {
    let w = zoo::make_cluster_space(Pattern::path(2).unwrap(), Growth::linear(2, 0), 20).unwrap();
    for n in 2..=8i64 {
        for q in 0..2 {
            let x = w.id_of(&[n, q]).unwrap();
            // nearest other cluster is cluster 1, through the hub
            assert_eq!(separation_at(&w, x, 1), Separation::Exact(2 + 2 * n as u64));
        }
    }
}

#[test]
fn ternary_separation_is_at_most_three_r() {
    let w = zoo::make_m(6).unwrap();
    for r in 1..=27 {
        for (x, s) in separation_profile(&w, r).unwrap().values {
            let v = s.exact().unwrap();
            assert!(v <= 3 * r, "r={r} x={:?} s={v}", w.coords(x));
        }
    }
}

#[test]
fn divergence_trends() {
    let clusters = zoo::make_cluster_space(Pattern::path(2).unwrap(), Growth::linear(2, 0), 40).unwrap();
    for r in 1..=3 {
        let row = divergence_row(&separation_profile(&clusters, r).unwrap(), &clusters, 8).unwrap();
        assert_eq!(row.trend, Trend::Diverging, "r={r} {row:?}");
    }
    let n = zoo::make_grid(false, 1, 200).unwrap();
    for r in [1, 5, 20] {
        let row = divergence_row(&separation_profile(&n, r).unwrap(), &n, 5).unwrap();
        assert_eq!(row.trend, Trend::Bounded { cap: 1 });
    }
    let m = zoo::make_m(7).unwrap();
    for r in [1, 4, 13, 27] {
        let row = divergence_row(&separation_profile(&m, r).unwrap(), &m, 6).unwrap();
        match row.trend {
            Trend::Bounded { cap } => assert!(cap <= 3 * r),
            other => panic!("r={r} {other:?}"),
        }
    }
    assert!(divergence_row(&separation_profile(&n, 1).unwrap(), &n, 1).is_err());
}

fn found(outcome: TowerOutcome) -> coarsekit_core::criteria::TowerWitness {
    match outcome {
        TowerOutcome::Found { witness, .. } => witness,
        other => panic!("{other:?}"),
    }
}

#[test]
fn towers_in_m2_and_the_naturals() {
    let m2 = zoo::make_mk(2, 3600).unwrap();
    let n = zoo::make_grid(false, 1, 300).unwrap();
    for w in [&m2, &n] {
        let wit = found(detect_m2(w, &TowerParams::new(4, 6)).unwrap());
        verify::tower(w, &wit).unwrap();
        for (j, k) in [(4, 3), (3, 6), (2, 2), (1, 1)] {
            let smaller = found(detect_m2(w, &TowerParams::new(j, k)).unwrap());
            verify::tower(w, &smaller).unwrap();
        }
    }
}

#[test]
fn no_towers_in_squares_or_bounded_clusters() {
    let squares = zoo::make_mk(1, 2500).unwrap();
    match detect_m2(&squares, &TowerParams::new(3, 4)).unwrap() {
        TowerOutcome::NoWitnessAtScale { exhaustive, .. } => assert!(exhaustive),
        other => panic!("{other:?}"),
    }
    let gap = Growth::Polynomial { scale: 2, exponent: 1, offset: 40 };
    let bounded = zoo::make_cluster_space(Pattern::path(2).unwrap(), gap, 10).unwrap();
    match detect_m2(&bounded, &TowerParams::new(4, 6)).unwrap() {
        TowerOutcome::NoWitnessAtScale { exhaustive, viable_bases, .. } => {
            assert!(exhaustive);
            assert_eq!(viable_bases, 0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn tampered_towers_are_rejected() {
    let n = zoo::make_grid(false, 1, 300).unwrap();
    let wit = found(detect_m2(&n, &TowerParams::new(3, 2)).unwrap());
    let mut dup = wit.clone();
    dup.towers[1][0] = dup.towers[0][0].clone();
    assert!(verify::tower(&n, &dup).is_err());
    let mut close = wit.clone();
    let base = close.towers[0][0].coords[0];
    let near = if base > 0 { base - 1 } else { base + 1 };
    close.towers[0][1] = n.point(n.id_of(&[near]).unwrap());
    assert!(verify::tower(&n, &close).is_err());
}

#[test]
fn pair_families() {
    let windows = [
        zoo::make_grid(true, 1, 60).unwrap(),
        zoo::make_grid(false, 1, 60).unwrap(),
        zoo::make_m(6).unwrap(),
        zoo::make_m32(3584 * 3584 + 10).unwrap(),
    ];
    for w in &windows {
        let report = detect_m32(w, &[2, 4, 8], 16, 10).unwrap();
        let wit = report.witness().unwrap_or_else(|| panic!("{report:?}"));
        verify::pair_family(w, &wit).unwrap();
    }
    let clusters = zoo::make_cluster_space(Pattern::path(2).unwrap(), Growth::linear(2, 0), 20).unwrap();
    let report = detect_m32(&clusters, &[2], 5, 10).unwrap();
    assert_eq!(report.scales, [ScaleOutcome::NoWitnessAtScale { r: 2, max_pairs: 0 }]);
}

#[test]
fn m32_pairs_come_from_partner_columns() {
    let w = zoo::make_m32(3584 * 3584 + 10).unwrap();
    let report = detect_m32(&w, &[8], 16, 4).unwrap();
    let wit = report.witness().unwrap();
    for (x, y) in &wit.families[0].pairs {
        let d = w.distance(x.id, y.id);
        assert!(8 < d && d <= 16);
    }
}

/// Components by flood fill over all pairs.
fn flood(w: &Window, members: &[PointId], r: u64) -> BTreeSet<Vec<PointId>> {
    let set: BTreeSet<PointId> = members.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    for &s in members {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &set {
                if !seen.contains(&y) && w.distance(x, y) <= r {
                    seen.insert(y);
                    comp.push(y);
                    q.push_back(y);
                }
            }
        }
        comp.sort();
        out.insert(comp);
    }
    out
}

#[test]
fn components_match_flood_fill() {
    for (w, r) in [
        (zoo::make_m(6).unwrap(), 10),
        (zoo::make_free_group(2, 4).unwrap(), 2),
        (zoo::make_mk(2, 400).unwrap(), 12),
    ] {
        let all: Vec<PointId> = w.ids().collect();
        let dec = chain_components(&w, &all, r, 1);
        let ours: BTreeSet<Vec<PointId>> = dec.components.iter().map(|c| c.members.clone()).collect();
        assert_eq!(ours, flood(&w, &all, r));
        for c in &dec.components {
            let diam = c.members.iter().flat_map(|&x| c.members.iter().map(move |&y| (x, y)));
            assert_eq!(c.diameter, diam.map(|(x, y)| w.distance(x, y)).max().unwrap());
        }
    }
}

#[test]
fn asdim_profiles() {
    let z = zoo::make_grid(true, 1, 50).unwrap();
    assert!(asdim0_profile(&z, &[1], None).unwrap().rows[0].unbounded_at_window);
    let scales: Vec<u64> = (1..=27).collect();
    let small = asdim0_profile(&zoo::make_m(7).unwrap(), &scales, None).unwrap();
    let large = asdim0_profile(&zoo::make_m(8).unwrap(), &scales, None).unwrap();
    for (a, b) in small.rows.iter().zip(&large.rows) {
        assert!(!a.unbounded_at_window);
        assert_eq!(a.max_interior_diameter, b.max_interior_diameter, "r={}", a.r);
        // components only vary digits i with 3^i <= 3r / 2
        assert!(a.max_interior_diameter.unwrap() <= 3 * a.r);
    }
    let clusters = zoo::make_cluster_space(Pattern::path(3).unwrap(), Growth::linear(3, 0), 30).unwrap();
    let p = asdim0_profile(&clusters, &[1, 2, 5], None).unwrap();
    for row in &p.rows {
        assert_eq!(row.max_interior_diameter, Some(2), "r={}", row.r);
    }
}

#[test]
fn ends_of_grids_and_free_groups() {
    let windows = [
        zoo::make_grid(false, 1, 30).unwrap(),
        zoo::make_grid(false, 2, 30).unwrap(),
        zoo::make_grid(true, 2, 30).unwrap(),
    ];
    for w in &windows {
        for r in [1, 2, 3] {
            for rho in [2, 5, 8] {
                assert_eq!(ends_report(w, r, rho, None).unwrap().count, 1, "r={r} rho={rho}");
            }
        }
    }
    let z = zoo::make_grid(true, 1, 30).unwrap();
    assert_eq!(ends_report(&z, 1, 5, None).unwrap().count, 2);
    let f2 = zoo::make_free_group(2, 9).unwrap();
    let rep = ends_report(&f2, 2, 3, None).unwrap();
    // chains of steps <= 2 beyond radius 3 cannot change the first 3 letters
    assert_eq!(rep.count, 4 * 3 * 3);
    let outside: Vec<PointId> = f2.ids().filter(|&x| f2.depth(x) > 3).collect();
    assert_eq!(flood(&f2, &outside, 2).len(), rep.components.len());
}

#[test]
fn split_witnesses() {
    let z = zoo::make_grid(true, 1, 30).unwrap();
    verify::split(&z, &split_witness(&z, 2, 4, None).unwrap().unwrap()).unwrap();
    let f2 = zoo::make_free_group(2, 9).unwrap();
    for (r, rho) in [(1, 1), (2, 2), (2, 3), (1, 5)] {
        let wit = split_witness(&f2, r, rho, None).unwrap().expect("free group splits");
        verify::split(&f2, &wit).unwrap();
    }
    let z2 = zoo::make_grid(true, 2, 20).unwrap();
    for (r, rho) in [(1, 2), (2, 5), (3, 8)] {
        assert!(split_witness(&z2, r, rho, None).unwrap().is_none());
    }
    let mut bad = split_witness(&z, 2, 4, None).unwrap().unwrap();
    let moved = bad.b.remove(0);
    bad.a.push(moved);
    assert!(verify::split(&z, &bad).is_err());
}

fn powers_of_two(w: &Window) -> PointSet {
    (0..63).map(|k| 1i64 << k).take_while(|&v| v as u64 <= w.horizon()).map(|v| w.id_of(&[v]).unwrap()).collect()
}

fn origin(w: &Window) -> PointSet {
    [w.id_of(&[0]).unwrap()].into_iter().collect()
}

#[test]
fn higson_bump_on_powers_of_two() {
    let half = Rational::new(1, 2);
    let mut radii = Vec::new();
    for h in [1u64 << 12, 1 << 13] {
        let w = zoo::make_grid(false, 1, h).unwrap();
        let f = higson_from_separated(&powers_of_two(&w), &origin(&w), &w).unwrap();
        for x in f.selected() {
            assert_eq!(f.value(x), rational::one());
        }
        assert_eq!(f.value(w.id_of(&[0]).unwrap()), rational::zero());
        assert!(f.values.iter().all(|v| *v >= rational::zero() && *v <= rational::one()));
        let rep = variation_report(&f.values, half, 5, &w).unwrap();
        assert!(rep.enclosing_radius < h);
        radii.push(rep.enclosing_radius);
    }
    assert_eq!(radii[0], radii[1]);
}

#[test]
fn higson_summands_follow_the_formula() {
    let w = zoo::make_grid(false, 1, 4096).unwrap();
    let f = higson_from_separated(&powers_of_two(&w), &origin(&w), &w).unwrap();
    for x in w.ids() {
        let mut expected = rational::zero();
        for &n in &f.summands {
            let piece = &f.pieces[&(2 * n)];
            let d = piece.iter().map(|&a| w.distance(x, a)).min().unwrap();
            let term = Rational::new(n as i128 - d as i128, n as i128);
            if term > rational::zero() {
                assert_eq!(expected, rational::zero(), "two summands at {x}");
                expected = term;
            }
        }
        assert_eq!(f.value(x), expected);
    }
}

#[test]
fn higson_max_variation_is_bounded_by_the_sum() {
    let w = zoo::make_grid(false, 1, 4096).unwrap();
    let f = higson_from_separated(&powers_of_two(&w), &origin(&w), &w).unwrap();
    let threes: PointSet = (0..8).map(|k| w.id_of(&[3i64.pow(k)]).unwrap()).collect();
    let g = higson_from_separated(&threes, &origin(&w), &w).unwrap();
    let h = higson_max(&f.values, &g.values).unwrap();
    for r in [1, 3, 5, 9] {
        for eps in [Rational::new(1, 4), Rational::new(1, 2)] {
            let vf = variation_report(&f.values, eps, r, &w).unwrap();
            let vg = variation_report(&g.values, eps, r, &w).unwrap();
            let vh = variation_report(&h, eps, r, &w).unwrap();
            assert!(vh.max_variation <= vf.max_variation + vg.max_variation);
            assert!(vh.enclosing_radius <= vf.enclosing_radius.max(vg.enclosing_radius));
        }
    }
}
