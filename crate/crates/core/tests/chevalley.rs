use std::sync::Arc;

use chevlab::algebra::{FiniteRing, Integers, Matrix, Ring};
use chevlab::chevalley::{verify_commutator_formula, verify_commutator_numeric, RepKind, Representation, StructureConstants};
use chevlab::rootcore::{RootSystem, Series};
use proptest::prelude::*;

fn constants(s: Series, n: usize) -> Arc<StructureConstants> {
    Arc::new(StructureConstants::new(Arc::new(RootSystem::build(s, n).unwrap())))
}

fn types() -> Vec<(Series, usize)> {
    let mut t = Series::all_types(4);
    t.push((Series::E, 6));
    t
}

#[test]
fn magnitudes_are_string_lengths() {
    // |N_{a,b}| = p + 1, where b - p a is the bottom of the a-string through b
    for (s, n) in types() {
        let c = constants(s, n);
        let sys = c.system();
        for (i, a) in sys.roots().iter().enumerate() {
            for (j, b) in sys.roots().iter().enumerate() {
                let Some(_) = sys.root_sum(a, b) else { continue };
                let mut p = 0;
                while sys.contains(&b.sub(&a.scale(p + 1))) {
                    p += 1;
                }
                assert_eq!(c.get(i, j).abs(), p + 1, "{s}{n} {a:?} {b:?}");
                assert_eq!(c.get(i, j), -c.get(j, i));
            }
        }
    }
}

#[test]
fn constants_satisfy_checks() {
    for (s, n) in types() {
        assert_eq!(constants(s, n).check(), Ok(()), "{s}{n}");
    }
}

fn commutator(m: &Matrix<i64>, k: &Matrix<i64>) -> Matrix<i64> {
    m.mul(&Integers, k).sub(&Integers, &k.mul(&Integers, m))
}

#[test]
fn representations_realize_the_brackets() {
    for (s, n, kind) in [
        (Series::A, 3, RepKind::Natural),
        (Series::C, 2, RepKind::Symplectic),
        (Series::C, 3, RepKind::Symplectic),
        (Series::G, 2, RepKind::Adjoint),
        (Series::B, 3, RepKind::Adjoint),
    ] {
        let c = constants(s, n);
        let rep = Representation::build(c.clone(), kind).unwrap();
        let sys = c.system();
        for a in 0..sys.len() {
            for b in 0..sys.len() {
                if a == b || sys.negate_index(a) == b {
                    continue;
                }
                let lhs = commutator(rep.generator(a), rep.generator(b));
                let rhs = match sys.sum_index(a, b) {
                    Some(ab) => rep.generator(ab).scale(&Integers, &(c.get(a, b) as i64)),
                    None => Matrix::zero(rep.dim()),
                };
                assert!(lhs == rhs, "{s}{n} {kind}: [X_{a}, X_{b}]");
            }
        }
    }
}

#[test]
fn sl3_group_commutators() {
    // in SL3 every commutator of non-opposite root elements is x_{a+b}(± s t)
    let c = constants(Series::A, 2);
    let rep = Representation::build(c.clone(), RepKind::Natural).unwrap();
    let f = FiniteRing::field(7).unwrap();
    let sys = c.system();
    for a in 0..sys.len() {
        for b in 0..sys.len() {
            if a == b || sys.negate_index(a) == b {
                continue;
            }
            for (s, t) in [(1u8, 1u8), (2, 5), (6, 3)] {
                let x = rep.root_element(&f, a, &s);
                let y = rep.root_element(&f, b, &t);
                let xi = rep.root_element(&f, a, &f.neg(&s));
                let yi = rep.root_element(&f, b, &f.neg(&t));
                let comm = x.mul(&f, &y).mul(&f, &xi).mul(&f, &yi);
                let want = match sys.sum_index(a, b) {
                    Some(ab) => rep.root_element(&f, ab, &f.mul(&f.from_int(c.get(a, b) as i64), &f.mul(&s, &t))),
                    None => Matrix::identity(&f, 3),
                };
                assert!(comm == want);
            }
        }
    }
}

#[test]
fn commutator_formula_symbolic() {
    for (s, n) in [(Series::B, 2), (Series::G, 2), (Series::A, 3)] {
        let rep = Representation::adjoint(constants(s, n));
        let r = verify_commutator_formula(&rep);
        assert!(r.passed(), "{s}{n}: {:?}", r.failures);
        assert!(r.c11_checked > 0);
    }
}

#[test]
fn commutator_formula_numeric_e6() {
    let rep = Representation::adjoint(constants(Series::E, 6));
    let r = verify_commutator_numeric(&rep, &[5, 7], 2, 11).unwrap();
    assert!(r.passed());
    assert_eq!(r.samples_per_pair, 4);
}

#[test]
fn no_classical_rep_for_exceptional() {
    assert!(Representation::classical(constants(Series::G, 2)).is_err());
}

fn small_type() -> impl Strategy<Value = (Series, usize)> {
    proptest::sample::select(Series::all_types(3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn root_elements_are_additive((s, n) in small_type(), i in 0usize..100, u in 0u8..5, v in 0u8..5) {
        let rep = Representation::adjoint(constants(s, n));
        let f = FiniteRing::field(5).unwrap();
        let a = i % rep.system().len();
        let lhs = rep.root_element(&f, a, &u).mul(&f, &rep.root_element(&f, a, &v));
        let rhs = rep.root_element(&f, a, &f.add(&u, &v));
        prop_assert!(lhs == rhs);
    }
}
