use std::sync::Arc;

use chevlab::algebra::FiniteRing;
use chevlab::relcalc::RelCase;
use chevlab::rootcore::Series;
use chevlab::steinberg::{
    enumerate, presentation, todd_coxeter, verify_k2_centrality, verify_mono, verify_st_ker, Presentation, RelatorKind,
    TableStatus,
};
use proptest::prelude::*;

fn order(ngens: usize, relators: &[Vec<i32>]) -> usize {
    let t = todd_coxeter(ngens, relators, &[], 100_000).unwrap();
    assert!(t.is_complete());
    t.len()
}

fn power(w: &[i32], k: usize) -> Vec<i32> {
    w.iter().copied().cycle().take(w.len() * k).collect()
}

/// `q^3 (q^2 - 1)(q^3 - 1)`.
fn sl3(q: usize) -> usize {
    q.pow(3) * (q * q - 1) * (q.pow(3) - 1)
}

#[test]
fn classical_presentations() {
    // S5 as a Coxeter group
    let s = |i: i32| vec![i, i];
    let braid = |i: i32, j: i32, m: usize| power(&[i, j], m);
    let mut s5 = vec![s(1), s(2), s(3), s(4), braid(1, 2, 3), braid(2, 3, 3), braid(3, 4, 3)];
    s5.extend([braid(1, 3, 2), braid(1, 4, 2), braid(2, 4, 2)]);
    assert_eq!(order(4, &s5), 120);
    // PSL(2,7) = <a, b | a^2, b^3, (ab)^7, [a,b]^4>
    let psl = vec![s(1), vec![2, 2, 2], power(&[1, 2], 7), power(&[1, 2, -1, -2], 4)];
    assert_eq!(order(2, &psl), 168);
    // quaternion group
    let q8 = vec![vec![1, 1, 1, 1], vec![1, 1, -2, -2], vec![2, 1, -2, 1]];
    assert_eq!(order(2, &q8), 8);
}

#[test]
fn overflow_is_a_status() {
    let t = todd_coxeter(2, &[vec![1, 1], vec![2, 2, 2]], &[], 1000).unwrap();
    assert_eq!(t.status, TableStatus::Overflow);
}

#[test]
fn steinberg_orders_over_fields() {
    // K_2 of a finite field is trivial, so St_3(F_q) = SL3(F_q)
    let case = Arc::new(RelCase::build(Series::A, 2, None, None).unwrap());
    for q in [2, 3] {
        let st = enumerate(case.clone(), &FiniteRing::field(q as u32).unwrap(), 2_000_000).unwrap();
        assert_eq!(st.order(), Some(sl3(q)));
    }
}

#[test]
fn centrality_over_z4() {
    let case = Arc::new(RelCase::build(Series::A, 2, None, None).unwrap());
    let (r, _) = verify_k2_centrality(case, &FiniteRing::parse("Z/4").unwrap(), 2_000_000).unwrap();
    assert!(r.passed());
    // |SL3(Z/4)| = 2^8 |SL3(F2)|
    assert_eq!(r.e_order, 256 * 168);
    assert_eq!(r.st_order.unwrap() % r.e_order, 0);
    assert!(r.centrality_violations.is_empty());
}

#[test]
fn unipotent_injectivity() {
    let case = Arc::new(RelCase::build(Series::C, 2, None, None).unwrap());
    let ring = FiniteRing::field(3).unwrap();
    let (_, st) = verify_k2_centrality(case.clone(), &ring, 2_000_000).unwrap();
    let sys = case.system();
    let m = verify_mono(&st, &sys.positive_indices()).unwrap();
    assert!(m.passed());
    // U has order q^|Φ+| = 3^4
    assert_eq!(m.matrix_order, 81);
    let a = sys.simple_indices()[0];
    assert!(verify_mono(&st, &[a, sys.neg_index(a)]).is_err());
}

#[test]
fn exactness_over_truncated_ring() {
    let case = Arc::new(RelCase::build(Series::A, 2, None, None).unwrap());
    let ring = FiniteRing::parse("F2[t]/(t^2)").unwrap();
    let t = ring.ideal_generated(&[ring.parse_element("t").unwrap()]);
    let r = verify_st_ker(case, &ring, &t, 2_000_000).unwrap();
    assert!(r.passed());
    assert_eq!(r.st_quotient_order, Some(168));
}

#[test]
fn presentation_shape() {
    let case = RelCase::build(Series::A, 2, None, None).unwrap();
    let ring = FiniteRing::parse("Z/4").unwrap();
    let p = presentation(&case, &ring).unwrap();
    // 6 roots, 3 nonzero values each
    assert_eq!(p.generators.len(), 18);
    assert_eq!(p.count(RelatorKind::Sum), 6 * 9);
    let back = Presentation::parse(&p.to_text(), &case, &ring).unwrap();
    assert_eq!(back.relators, p.relators);
}

proptest! {
    #[test]
    fn dihedral_groups(n in 2usize..40) {
        // <r, s | r^n, s^2, (rs)^2> has order 2n, and <r> has index 2
        let rels = vec![vec![1; n], vec![2, 2], vec![1, 2, 1, 2]];
        let t = todd_coxeter(2, &rels, &[vec![1]], 100_000).unwrap();
        prop_assert_eq!(t.len(), 2);
        prop_assert_eq!(order(2, &rels), 2 * n);
        let full = todd_coxeter(2, &rels, &[], 100_000).unwrap();
        for c in 0..full.len() {
            for g in [1i32, -1, 2, -2] {
                prop_assert_eq!(full.act(full.act(c, g), -g), c);
            }
        }
    }
}
