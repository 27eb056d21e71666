use std::collections::BTreeSet;

use coarsekit_core::space::{separated_partition, PointSet};
use coarsekit_core::translations::{decompose, relation_at, PartialTranslation};
use coarsekit_core::{verify, zoo, PointId, Window};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zoo_windows() -> Vec<(&'static str, Window)> {
    vec![
        ("N", zoo::make_grid(false, 1, 60).unwrap()),
        ("Z2", zoo::make_grid(true, 2, 10).unwrap()),
        ("F2", zoo::make_free_group(2, 4).unwrap()),
        ("M", zoo::make_m(6).unwrap()),
        ("M2", zoo::make_mk(2, 200).unwrap()),
        ("M32", zoo::make_m32(2000).unwrap()),
        (
            "clusters",
            zoo::make_cluster_space(zoo::Pattern::path(3).unwrap(), zoo::Growth::linear(2, 0), 10).unwrap(),
        ),
    ]
}

#[test]
fn partitions_pass_the_pairwise_checker() {
    for (name, w) in zoo_windows() {
        for r in 1..=8 {
            let p = separated_partition(&w, r).unwrap();
            verify::partition(&w, &p).unwrap_or_else(|e| panic!("{name} r={r}: {e}"));
            let max_ball = w.ids().map(|x| w.neighbors(x, r).len()).max().unwrap();
            assert!(p.classes.len() <= max_ball, "{name} r={r}");
        }
    }
}

#[test]
fn integer_plane_uses_at_most_five_classes() {
    let w = zoo::make_grid(true, 2, 10).unwrap();
    assert!(separated_partition(&w, 1).unwrap().classes.len() <= 5);
}

fn random_translation(w: &Window, rng: &mut ChaCha8Rng, size: usize) -> PartialTranslation {
    let mut ids: Vec<PointId> = w.ids().collect();
    ids.shuffle(rng);
    let dom = &ids[..size.min(ids.len())];
    let mut img = ids.clone();
    img.shuffle(rng);
    PartialTranslation::new(w, dom.iter().copied().zip(img)).unwrap()
}

#[test]
fn relation_matches_brute_force() {
    let w = zoo::make_m(5).unwrap();
    let rel = relation_at(&w, 3).unwrap();
    let inner = w.interior(3);
    let mut expected = BTreeSet::new();
    for &x in &inner {
        for &y in &inner {
            if w.distance(x, y) <= 3 {
                expected.insert((x, y));
            }
        }
    }
    assert_eq!(rel.pairs, expected);
    let n = zoo::make_grid(false, 1, 10).unwrap();
    let e0 = relation_at(&n, 0).unwrap();
    assert!(e0.pairs.iter().all(|(x, y)| x == y));
    assert_eq!(e0.pairs.len(), 11);
    let e1 = relation_at(&n, 1).unwrap();
    assert_eq!(e1.pairs.len(), 10 + 2 * 9);
}

#[test]
fn decompositions_are_exact_and_within_degree() {
    for w in [zoo::make_grid(false, 1, 40).unwrap(), zoo::make_grid(true, 2, 8).unwrap()] {
        for n in 1..=3 {
            let rel = relation_at(&w, n).unwrap();
            let parts = decompose(&rel, &w).unwrap();
            verify::decomposition(&w, &rel, &parts).unwrap();
            assert!(parts.len() <= rel.max_degree());
        }
    }
    let z = zoo::make_grid(true, 1, 30).unwrap();
    let rel = relation_at(&z, 2).unwrap();
    let parts = decompose(&rel, &z).unwrap();
    assert_eq!(rel.max_degree(), 5);
    assert!(parts.len() <= 5);
    verify::decomposition(&z, &rel, &parts).unwrap();
    let n = zoo::make_grid(false, 1, 30).unwrap();
    assert_eq!(decompose(&relation_at(&n, 1).unwrap(), &n).unwrap().len(), 3);
}

#[test]
fn ternary_compositions_hold_pointwise() {
    let w = zoo::make_m(6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let f = random_translation(&w, &mut rng, 30);
        let g = random_translation(&w, &mut rng, 30);
        let fg = f.compose(&g, &w);
        for x in w.ids() {
            assert_eq!(fg.get(x), g.get(x).and_then(|y| f.get(y)));
        }
        assert_eq!(fg.displacement(), fg.measured_displacement(&w));
    }
}

fn arb_case() -> impl Strategy<Value = (u64, usize, usize, usize)> {
    (any::<u64>(), 0usize..40, 0usize..40, 0usize..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_semigroup_laws((seed, a, b, c) in arb_case()) {
        let w = zoo::make_grid(true, 2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_translation(&w, &mut rng, a);
        let g = random_translation(&w, &mut rng, b);
        let h = random_translation(&w, &mut rng, c);
        prop_assert_eq!(f.compose(&g, &w).compose(&h, &w), f.compose(&g.compose(&h, &w), &w));
        prop_assert_eq!(f.compose(&f.invert(), &w).compose(&f, &w), f.clone());
        prop_assert_eq!(f.invert().invert(), f.clone());
        let d1 = PartialTranslation::identity(&f.domain());
        let d2 = PartialTranslation::identity(&g.image());
        prop_assert_eq!(d1.compose(&d2, &w), d2.compose(&d1, &w));
        let fg = f.compose(&g, &w);
        prop_assert!(fg.displacement() <= f.displacement() + g.displacement());
        prop_assert_eq!(fg.displacement(), fg.measured_displacement(&w));
    }

    #[test]
    fn apply_matches_pointwise(seed in any::<u64>(), size in 0usize..30) {
        let w = zoo::make_grid(false, 1, 30).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_translation(&w, &mut rng, size);
        let set: PointSet = w.ids().filter(|_| rng.gen_bool(0.5)).collect();
        let expected: PointSet = set.iter().filter_map(|&x| f.get(x)).collect();
        prop_assert_eq!(f.apply(&set), expected);
    }

    #[test]
    fn random_relations_decompose(seed in any::<u64>(), density in 1u32..6) {
        let w = zoo::make_grid(true, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = relation_at(&w, 2).unwrap();
        let pairs = full.pairs.into_iter().filter(|_| rng.gen_ratio(density, 6)).collect();
        let rel = coarsekit_core::translations::BoundedRelation { pairs, bound: 2 };
        let parts = decompose(&rel, &w).unwrap();
        prop_assert!(verify::decomposition(&w, &rel, &parts).is_ok());
    }
}
