use std::collections::BTreeSet;

use chevlab::rootcore::{cartan_matrix, RootSystem, Series};
use proptest::prelude::*;

/// Roots as the orbit of the simple roots under simple reflections,
/// `s_i(b) = b - <b, a_i^v> a_i` with `<a_j, a_i^v> = A[j][i]`.
fn orbit_roots(a: &[Vec<i32>]) -> BTreeSet<Vec<i32>> {
    let n = a.len();
    let mut seen = BTreeSet::new();
    let mut stack: Vec<Vec<i32>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i32).collect()).collect();
    while let Some(b) = stack.pop() {
        if !seen.insert(b.clone()) {
            continue;
        }
        for i in 0..n {
            let pairing: i32 = (0..n).map(|j| b[j] * a[j][i]).sum();
            let mut c = b.clone();
            c[i] -= pairing;
            if !seen.contains(&c) {
                stack.push(c);
            }
        }
    }
    seen
}

#[test]
fn roots_match_weyl_orbits() {
    for (s, n) in Series::all_types(8) {
        let sys = RootSystem::build(s, n).unwrap();
        let lib: BTreeSet<Vec<i32>> = sys.roots().iter().map(|r| r.0.clone()).collect();
        assert_eq!(lib, orbit_roots(&cartan_matrix(s, n).unwrap()), "{s}{n}");
    }
}

#[test]
fn root_counts() {
    // |Φ| = rank · Coxeter number
    let coxeter = [
        (Series::A, 5, 6),
        (Series::B, 4, 8),
        (Series::C, 5, 10),
        (Series::D, 6, 10),
        (Series::E, 6, 12),
        (Series::E, 7, 18),
        (Series::E, 8, 30),
        (Series::F, 4, 12),
        (Series::G, 2, 6),
    ];
    for (s, n, h) in coxeter {
        assert_eq!(RootSystem::build(s, n).unwrap().len(), n * h, "{s}{n}");
    }
}

#[test]
fn highest_roots() {
    let hr = |s, n| RootSystem::build(s, n).unwrap().highest_roots()[0].0.clone();
    assert_eq!(hr(Series::E, 8), vec![2, 3, 4, 6, 5, 4, 3, 2]);
    assert_eq!(hr(Series::F, 4), vec![2, 3, 4, 2]);
    assert_eq!(hr(Series::G, 2), vec![3, 2]);
    assert_eq!(hr(Series::B, 3), vec![1, 2, 2]);
    assert_eq!(hr(Series::C, 3), vec![2, 2, 1]);
    // height of the highest root is h - 1
    assert_eq!(hr(Series::E, 8).iter().sum::<i32>(), 29);
}

#[test]
fn diagram_automorphisms() {
    let order = |s, n| RootSystem::build(s, n).unwrap().automorphisms().order();
    assert_eq!(order(Series::A, 1), 1);
    assert_eq!(order(Series::A, 4), 2);
    assert_eq!(order(Series::D, 4), 6);
    assert_eq!(order(Series::D, 5), 2);
    assert_eq!(order(Series::E, 6), 2);
    assert_eq!(order(Series::E, 7), 1);
    assert_eq!(order(Series::F, 4), 1);
    assert_eq!(RootSystem::build(Series::D, 4).unwrap().automorphisms().subgroups().len(), 6);
}

#[test]
fn unsupported_ranks() {
    assert!(RootSystem::build(Series::E, 9).is_err());
    assert!(RootSystem::build(Series::D, 3).is_err());
    assert!(RootSystem::build(Series::G, 3).is_err());
    assert!(RootSystem::from_cartan(vec![vec![2, -1], vec![-1, 3]]).is_err());
}

#[test]
fn json_round_trip() {
    for (s, n) in Series::all_types(4) {
        let sys = RootSystem::build(s, n).unwrap();
        let back = RootSystem::from_json(&sys.to_json()).unwrap();
        assert_eq!(back.roots(), sys.roots());
    }
}

fn any_type() -> impl Strategy<Value = (Series, usize)> {
    proptest::sample::select(Series::all_types(6))
}

proptest! {
    #[test]
    fn roots_closed_under_reflections((s, n) in any_type(), i in 0usize..300, j in 0usize..300) {
        let sys = RootSystem::build(s, n).unwrap();
        let a = sys.root(i % sys.len()).clone();
        let b = sys.root(j % sys.len()).clone();
        let r = sys.reflect(&a, &b);
        prop_assert!(sys.contains(&r));
        prop_assert!(sys.contains(&a.neg()));
        // a root string through b has length at most 4
        let (p, q) = sys.string(&a, &b);
        prop_assert!(p + q <= 3);
        if let Some(c) = sys.root_sum(&a, &b) {
            prop_assert_eq!(c.height(), a.height() + b.height());
        }
    }
}
