use chevlab::algebra::{FiniteRing, Matrix, Ring};
use proptest::prelude::*;

fn rings() -> Vec<FiniteRing> {
    ["F2", "F3", "F4", "F5", "Z/4", "Z/6", "Z/8", "F2[t]/(t^2)"].iter().map(|r| FiniteRing::parse(r).unwrap()).collect()
}

#[test]
fn unit_counts() {
    // Euler phi for Z/n; q - 1 for fields; half the elements of F2[t]/(t^2)
    let expected = [("F2", 1), ("F3", 2), ("F4", 3), ("F5", 4), ("Z/4", 2), ("Z/6", 2), ("Z/8", 4), ("F2[t]/(t^2)", 2)];
    for (name, units) in expected {
        assert_eq!(FiniteRing::parse(name).unwrap().units().len(), units, "{name}");
    }
}

#[test]
fn ideal_lattices() {
    let count = |r: &str| FiniteRing::parse(r).unwrap().ideals().len();
    // ideals of Z/n correspond to divisors of n
    assert_eq!(count("Z/4"), 3);
    assert_eq!(count("Z/6"), 4);
    assert_eq!(count("Z/8"), 4);
    assert_eq!(count("F4"), 2);
    assert_eq!(count("F2[t]/(t^2)"), 3);
    assert!(FiniteRing::parse("Z/4").unwrap().is_local());
    assert!(!FiniteRing::parse("Z/6").unwrap().is_local());
}

#[test]
fn quotients() {
    let z8 = FiniteRing::parse("Z/8").unwrap();
    let two = z8.ideal_generated(&[z8.int(2)]);
    assert_eq!(two.len(), 4);
    let (q, class) = z8.quotient(&z8.ideal_generated(&[z8.int(4)]));
    assert_eq!(q.size(), 4);
    for a in z8.elements() {
        for b in z8.elements() {
            assert_eq!(class[z8.mul_u8(a, b) as usize], q.mul_u8(class[a as usize], class[b as usize]));
        }
    }
}

#[test]
fn parse_rejects_nonsense() {
    for bad in ["", "F6", "Z/0", "Q", "F2[t]/(t^"] {
        assert!(FiniteRing::parse(bad).is_err(), "{bad}");
    }
}

#[test]
fn matrix_power_of_unipotent() {
    let r = FiniteRing::parse("Z/8").unwrap();
    let mut m = Matrix::identity(&r, 3);
    m.set(&r, 0, 1, r.one());
    m.set(&r, 1, 2, r.one());
    // (I + N)^k = I + kN + C(k,2)N^2 with N^3 = 0
    let p = m.pow(&r, 5);
    assert_eq!(p.get(&r, 0, 1), r.int(5));
    assert_eq!(p.get(&r, 0, 2), r.int(10));
    assert!(m.pow(&r, 8).get(&r, 0, 1) == r.zero());
}

proptest! {
    #[test]
    fn ring_axioms(ri in 0usize..8, a in 0u8..64, b in 0u8..64, c in 0u8..64) {
        let r = &rings()[ri];
        let n = r.size() as u8;
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(r.add_u8(a, b), r.add_u8(b, a));
        prop_assert_eq!(r.mul_u8(a, b), r.mul_u8(b, a));
        prop_assert_eq!(r.mul_u8(r.mul_u8(a, b), c), r.mul_u8(a, r.mul_u8(b, c)));
        prop_assert_eq!(r.mul_u8(a, r.add_u8(b, c)), r.add_u8(r.mul_u8(a, b), r.mul_u8(a, c)));
        prop_assert_eq!(r.add_u8(a, r.neg_u8(a)), 0);
        if let Some(inv) = r.inverse(a) {
            prop_assert_eq!(r.mul_u8(a, inv), r.one());
        }
    }

    #[test]
    fn ideals_are_closed(ri in 0usize..8) {
        let r = &rings()[ri];
        for i in r.ideals() {
            for &x in &i.0 {
                for y in r.elements() {
                    prop_assert!(i.contains(r.mul_u8(x, y)));
                }
                for &z in &i.0 {
                    prop_assert!(i.contains(r.add_u8(x, z)));
                }
            }
        }
    }
}
