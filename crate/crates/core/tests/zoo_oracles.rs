use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use coarsekit_core::space::{check_metric, Space};
use coarsekit_core::zoo::{self, ternary_support, ternary_value, Growth, Pattern};
use coarsekit_core::{PointId, Window};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// BFS on the Cayley graph restricted to reduced words of length <= h.
/// Geodesics between two words never leave the ball of the longer one.
fn cayley_bfs(w: &Window, from: PointId) -> Vec<u64> {
    let mut dist = vec![u64::MAX; w.len()];
    dist[from.index()] = 0;
    let mut q = VecDeque::from([from]);
    while let Some(x) = q.pop_front() {
        let word = w.coords(x).to_vec();
        for g in [1i64, -1, 2, -2] {
            let mut next = word.clone();
            if next.last() == Some(&-g) {
                next.pop();
            } else {
                next.push(g);
            }
            if let Some(y) = w.id_of(&next) {
                if dist[y.index()] == u64::MAX {
                    dist[y.index()] = dist[x.index()] + 1;
                    q.push_back(y);
                }
            }
        }
    }
    dist
}

#[test]
fn free_group_reduction_agrees_with_bfs() {
    let w = zoo::make_free_group(2, 4).unwrap();
    assert_eq!(w.len(), 2 * 3usize.pow(4) - 1);
    for x in w.ids() {
        let bfs = cayley_bfs(&w, x);
        for y in w.ids() {
            assert_eq!(w.distance(x, y), bfs[y.index()], "{:?} {:?}", w.coords(x), w.coords(y));
        }
    }
    assert_eq!(zoo::make_free_group(2, 2).unwrap().len(), 17);
}

#[test]
fn ternary_oracle_matches_the_digit_formula() {
    let w = zoo::make_m(9).unwrap();
    assert_eq!(w.len(), 512);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let x = PointId(rng.gen_range(0..w.len() as u32));
        let y = PointId(rng.gen_range(0..w.len() as u32));
        let digits = |p: PointId| -> i128 {
            ternary_support(w.coords(p)[0]).unwrap().iter().map(|&i| 3i128.pow(i)).sum()
        };
        assert_eq!(w.distance(x, y) as i128, (digits(x) - digits(y)).abs());
    }
    // every support inside {1..9} is present, and nothing else
    for mask in 0u32..512 {
        let support: Vec<u32> = (1..=9).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        assert!(w.id_of(&[ternary_value(&support)]).is_some());
    }
}

#[test]
fn mk_enumerator_agrees_with_membership() {
    let space = zoo::TernaryMk { k: 3 };
    let w = zoo::make_mk(3, 120).unwrap();
    let base = space.basepoint();
    let mut expected = 0;
    for a in 1..=12i64 {
        for b in a + 1..=12 {
            for c in b + 1..=12 {
                let p = vec![a * a, b * b, c * c];
                assert!(space.contains(&p));
                if space.distance(&base, &p) <= 120 {
                    expected += 1;
                    assert!(w.id_of(&p).is_some());
                }
            }
        }
    }
    assert_eq!(w.len(), expected);
    assert!(!space.contains(&[1, 4, 4]));
    assert!(!space.contains(&[1, 5, 9]));
}

#[test]
fn m32_enumerator_agrees_with_membership() {
    let space = zoo::M32;
    let w = zoo::make_m32(2000).unwrap();
    let mut count = 0;
    for k in 1i64..=50 {
        for n in 1..=8 {
            let p = vec![n, k * k];
            let member = n == 1 || (k % (1 << (n - 1)) == 0 && k % (1 << n) != 0);
            assert_eq!(space.contains(&p), member, "{p:?}");
            if member && space.distance(&[1, 1], &p) <= 2000 {
                count += 1;
                assert!(w.id_of(&p).is_some());
            }
        }
    }
    assert_eq!(w.len(), count);
}

#[test]
fn cluster_distances_follow_the_star_formula() {
    let w = zoo::make_cluster_space(Pattern::path(2).unwrap(), Growth::linear(2, 0), 3).unwrap();
    assert_eq!(w.len(), 6);
    for x in w.ids() {
        for y in w.ids() {
            let (a, b) = (w.coords(x), w.coords(y));
            let expected = if a[0] == b[0] {
                a[1].abs_diff(b[1])
            } else {
                a[1] as u64 + 2 * a[0] as u64 + 2 * b[0] as u64 + b[1] as u64
            };
            assert_eq!(w.distance(x, y), expected);
        }
    }
    assert!(check_metric(&w, 1000, 1).unwrap().is_clean());
}

fn three_part_union() -> Window {
    let parts: Vec<Arc<dyn Space>> = vec![
        Arc::new(zoo::Grid { signed: true, dims: 1 }),
        Arc::new(zoo::FreeGroup { rank: 2 }),
        Arc::new(zoo::Grid { signed: false, dims: 2 }),
    ];
    zoo::make_coarse_union(parts, Growth::linear(1, 0), 9).unwrap()
}

#[test]
fn coarse_union_triangle_on_all_triples() {
    let w = three_part_union();
    assert!(w.len() >= 200, "{}", w.len());
    let ids: Vec<PointId> = w.ids().take(200).collect();
    let d: Vec<Vec<u64>> = ids.iter().map(|&x| ids.iter().map(|&y| w.distance(x, y)).collect()).collect();
    for i in 0..ids.len() {
        for j in 0..ids.len() {
            assert_eq!(d[i][j], d[j][i]);
            assert_eq!(d[i][j] == 0, i == j);
            for k in 0..ids.len() {
                assert!(d[i][k] <= d[i][j] + d[j][k]);
            }
        }
    }
}

#[test]
fn coarse_union_component_separation() {
    let w = three_part_union();
    let mut best: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for x in w.ids() {
        for y in w.ids() {
            let (n, m) = (w.coords(x)[0], w.coords(y)[0]);
            if n < m {
                let e = best.entry((n, m)).or_insert(u64::MAX);
                *e = (*e).min(w.distance(x, y));
            }
        }
    }
    for ((n, m), d) in best {
        assert_eq!(d, (n + m) as u64);
    }
}

#[test]
fn within_component_distances_are_unchanged() {
    let w = three_part_union();
    let x = w.id_of(&[1, -4]).unwrap();
    let y = w.id_of(&[1, 3]).unwrap();
    assert_eq!(w.distance(x, y), 7);
    let u = w.id_of(&[2, 1, 2]).unwrap();
    let v = w.id_of(&[2, 1, -2]).unwrap();
    assert_eq!(w.distance(u, v), 2);
}

#[test]
fn ulf_profile_is_stable_under_horizon_growth() {
    use coarsekit_core::space::ulf_profile;
    let small = zoo::make_grid(true, 2, 8).unwrap();
    let large = zoo::make_grid(true, 2, 16).unwrap();
    let a = ulf_profile(&small, 4).unwrap();
    let b = ulf_profile(&large, 4).unwrap();
    assert_eq!(a, b);
    assert!(a.values().zip(a.values().skip(1)).all(|(x, y)| x <= y));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grid_metric_axioms(signed in any::<bool>(), dims in 1usize..4, seed in any::<u64>()) {
        let w = zoo::make_grid(signed, dims, 5).unwrap();
        prop_assert!(check_metric(&w, 300, seed).unwrap().is_clean());
    }

    #[test]
    fn free_group_metric_axioms(rank in 1u32..4, seed in any::<u64>()) {
        let w = zoo::make_free_group(rank, 4).unwrap();
        prop_assert!(check_metric(&w, 300, seed).unwrap().is_clean());
    }

    #[test]
    fn free_group_distance_is_length_of_quotient(rank in 1u32..4, a in 0usize..60, b in 0usize..60) {
        let w = zoo::make_free_group(rank, 3).unwrap();
        let (x, y) = (PointId((a % w.len()) as u32), PointId((b % w.len()) as u32));
        let inv: Vec<i64> = w.coords(x).iter().rev().map(|l| -l).collect();
        prop_assert_eq!(zoo::free_multiply(&inv, w.coords(y)).len() as u64, w.distance(x, y));
    }

    #[test]
    fn ball_enumeration_matches_filtering(r in 0u64..6, pick in 0usize..1000) {
        let w = zoo::make_grid(true, 2, 12).unwrap();
        let x = PointId((pick % w.interior(r).len()) as u32);
        let by_ball = w.neighbors(x, r);
        let by_scan: Vec<PointId> = w.ids().filter(|&y| w.distance(x, y) <= r).collect();
        prop_assert_eq!(by_ball, by_scan);
    }
}
