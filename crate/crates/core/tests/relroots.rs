use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use chevlab::relroots::verify::{verify_section3, Status, VerifyOptions};
use chevlab::relroots::chains::{find_special_chain, is_special_chain};
use chevlab::relroots::{all_projections, ProjectionSpec, RelativeRootSystem};
use chevlab::rootcore::{DiagramAutGroup, RootSystem, Series};
use proptest::prelude::*;

fn base(s: Series, n: usize) -> Arc<RootSystem> {
    Arc::new(RootSystem::build(s, n).unwrap())
}

fn system(s: Series, n: usize, j: &[usize], gamma: &[Vec<usize>]) -> RelativeRootSystem {
    let b = base(s, n);
    let g = DiagramAutGroup::generated_by(n, gamma);
    RelativeRootSystem::new(ProjectionSpec::new(b, j, g).unwrap())
}

/// Projection by hand: sum coordinates over each orbit of `J`, drop the rest.
fn oracle_fibers(b: &RootSystem, orbits: &[Vec<usize>]) -> BTreeMap<Vec<i32>, usize> {
    let mut out = BTreeMap::new();
    for r in b.roots() {
        let v: Vec<i32> = orbits.iter().map(|o| o.iter().map(|&i| r.0[i]).sum()).collect();
        if v.iter().any(|&x| x != 0) {
            *out.entry(v).or_insert(0) += 1;
        }
    }
    out
}

fn fibers(sys: &RelativeRootSystem) -> BTreeMap<Vec<i32>, usize> {
    (0..sys.len()).map(|i| (sys.element(i).0.clone(), sys.fiber(i).len())).collect()
}

#[test]
fn projections_match_oracle() {
    for (s, n) in Series::all_types(5) {
        let b = base(s, n);
        for spec in all_projections(&b) {
            let sys = RelativeRootSystem::new(spec.clone());
            assert_eq!(fibers(&sys), oracle_fibers(&b, spec.orbits()), "{:?}", spec.descriptor());
        }
    }
}

#[test]
fn quasi_split_types() {
    // ²E6 → F4, ³D4 → G2, ²A4 → BC2, ²A3 → C2
    let e6 = system(Series::E, 6, &[0, 1, 2, 3, 4, 5], &[vec![5, 1, 4, 3, 2, 0]]);
    assert_eq!((e6.rank(), e6.len()), (4, 48));
    let d4 = system(Series::D, 4, &[0, 1, 2, 3], &[vec![2, 1, 3, 0], vec![2, 1, 0, 3]]);
    assert_eq!((d4.rank(), d4.len()), (2, 12));
    let a4 = system(Series::A, 4, &[0, 1, 2, 3], &[vec![3, 2, 1, 0]]);
    assert_eq!((a4.rank(), a4.len(), a4.max_multiple()), (2, 12, 2));
    let a3 = system(Series::A, 3, &[0, 1, 2], &[vec![2, 1, 0]]);
    assert_eq!((a3.rank(), a3.len(), a3.max_multiple()), (2, 8, 1));
}

#[test]
fn inner_forms() {
    // A3/{a1,a3}: type A2; a1 and a1+a2 lie over (1,0)
    let sys = system(Series::A, 3, &[0, 2], &[]);
    let f = fibers(&sys);
    assert_eq!(f[&vec![1, 0]], 2);
    assert_eq!(f[&vec![0, 1]], 2);
    assert_eq!(f[&vec![1, 1]], 1);
    // C2/{a1}: BC1
    let sys = system(Series::C, 2, &[0], &[]);
    let f = fibers(&sys);
    assert_eq!(f, BTreeMap::from([(vec![-2], 1), (vec![-1], 2), (vec![1], 2), (vec![2], 1)]));
}

#[test]
fn invalid_projections() {
    let b = base(Series::A, 3);
    assert!(ProjectionSpec::new(b.clone(), &[5], DiagramAutGroup::trivial(3)).is_err());
    // J not invariant under the flip
    let flip = DiagramAutGroup::generated_by(3, &[vec![2, 1, 0]]);
    assert!(ProjectionSpec::new(b.clone(), &[0], flip).is_err());
    // not a diagram automorphism
    let bad = DiagramAutGroup::generated_by(3, &[vec![1, 0, 2]]);
    assert!(ProjectionSpec::new(b, &[0, 1, 2], bad).is_err());
}

#[test]
fn split_a2_special_chain() {
    let sys = system(Series::A, 2, &[0, 1], &[]);
    let top = sys.highest();
    let bottom = sys.neg_index(top);
    let chain = find_special_chain(&sys, bottom, top).unwrap().expect("a chain exists");
    let roots: Vec<_> = chain.iter().map(|&i| sys.element(i).clone()).collect();
    assert!(is_special_chain(&sys, sys.element(bottom), sys.element(top), &roots).is_ok());
    // the chain sums from -ã to ã
    let total: Vec<i32> = (0..2).map(|k| roots.iter().map(|r| r.0[k]).sum::<i32>() + sys.element(bottom).0[k]).collect();
    assert_eq!(&total, &sys.element(top).0);
}

#[test]
fn lemmas_on_small_cases() {
    for (s, n) in [(Series::A, 3), (Series::B, 3), (Series::C, 3), (Series::D, 4), (Series::G, 2)] {
        let b = base(s, n);
        for spec in all_projections(&b).into_iter().filter(|p| p.relative_rank() >= 2) {
            let sys = RelativeRootSystem::new(spec.clone());
            for r in verify_section3(&sys, VerifyOptions::default()) {
                assert_ne!(r.status, Status::Fail, "{:?} {} {:?}", spec.descriptor(), r.lemma, r.witness);
            }
        }
    }
}

#[test]
fn projection_counts() {
    // Γ-invariant subsets J with Γ ∈ {1, flip} for A3, rank ≥ 1
    let b = base(Series::A, 3);
    let specs = all_projections(&b);
    let descriptors: BTreeSet<_> = specs.iter().map(|s| s.descriptor()).collect();
    assert_eq!(descriptors.len(), specs.len());
    let inner = specs.iter().filter(|s| s.gamma_trivial()).count();
    assert_eq!(inner, 7);
}

fn any_projection() -> impl Strategy<Value = ProjectionSpec> {
    let all: Vec<ProjectionSpec> =
        Series::all_types(5).into_iter().flat_map(|(s, n)| all_projections(&base(s, n))).collect();
    proptest::sample::select(all)
}

proptest! {
    #[test]
    fn relative_systems_are_symmetric(spec in any_projection(), i in 0usize..200, j in 0usize..200) {
        let sys = RelativeRootSystem::new(spec);
        let (a, b) = (i % sys.len(), j % sys.len());
        let na = sys.neg_index(a);
        prop_assert_eq!(sys.neg_index(na), a);
        prop_assert_eq!(sys.fiber(a).len(), sys.fiber(na).len());
        prop_assert_eq!(sys.height(na), -sys.height(a));
        if let Some(c) = sys.sum_index(a, b) {
            let want: Vec<i32> = sys.element(a).0.iter().zip(&sys.element(b).0).map(|(x, y)| x + y).collect();
            prop_assert_eq!(&sys.element(c).0, &want);
        }
        let total: usize = sys.fibers().iter().map(Vec::len).sum::<usize>();
        let zero = sys.base().roots().iter().filter(|r| sys.project(r).is_none()).count();
        prop_assert_eq!(total + zero, sys.base().len());
    }
}
