//! Sparse multivariate polynomials with integer coefficients.
//!
//! A monomial is a list of `(variable, exponent)` pairs sorted by variable
//! with positive exponents; the polynomial keeps only nonzero coefficients,
//! so structural equality is polynomial equality.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Ring;

pub type Var = u32;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Monomial(pub Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Total degree in the variables accepted by `pred`.
    pub fn degree_in(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.0.iter().filter(|&&(v, _)| pred(v)).map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Poly {
    terms: BTreeMap<Monomial, i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Poly::zero();
        if c != 0 {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term(c: i64, m: Monomial) -> Self {
        let mut p = Poly::zero();
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Monomial::one()).copied(),
            _ => None,
        }
    }

    /// `(c, m)` if the polynomial is a single term.
    pub fn as_term(&self) -> Option<(i64, &Monomial)> {
        (self.terms.len() == 1).then(|| {
            let (m, &c) = self.terms.iter().next().unwrap();
            (c, m)
        })
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().checked_add(c).expect("coefficient overflow");
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Poly {
        if k == 0 {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), c.checked_mul(k).expect("coefficient overflow")))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let c = c1.checked_mul(c2).expect("coefficient overflow");
                let e = acc.entry(m1.mul(m2)).or_insert(0);
                *e = e.checked_add(c).expect("coefficient overflow");
            }
        }
        acc.retain(|_, c| *c != 0);
        Poly { terms: acc }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::constant(1);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Exact division of every coefficient by `d`.
    pub fn div_exact(&self, d: i64) -> Option<Poly> {
        if d == 0 {
            return None;
        }
        self.terms.values().all(|c| c % d == 0).then(|| Poly {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), c / d)).collect(),
        })
    }

    /// Substitute polynomials for variables; variables without an entry stay.
    pub fn substitute(&self, map: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            let mut t = Poly::constant(c);
            for &(v, e) in &m.0 {
                let base = map(v).unwrap_or_else(|| Poly::var(v));
                t = t.mul(&base.pow(e));
            }
            out = out.add(&t);
        }
        out
    }

    /// Evaluate in a ring, given the value of each variable.
    pub fn eval<R: Ring>(&self, ring: &R, value: &dyn Fn(Var) -> R::Elem) -> R::Elem {
        let mut acc = ring.zero();
        for (m, &c) in &self.terms {
            let mut t = ring.from_int(c);
            for &(v, e) in &m.0 {
                t = ring.mul(&t, &ring.pow(&value(v), e));
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    /// Whether every monomial has total degree `d` in the variables
    /// accepted by `pred`.
    pub fn is_homogeneous_in(&self, pred: impl Fn(Var) -> bool + Copy, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree_in(pred) == d)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Terms as `[coefficient, [[var, exp], ...]]` lists.
    pub fn to_term_list(&self) -> Vec<(i64, Vec<(Var, u32)>)> {
        self.terms.iter().map(|(m, &c)| (c, m.0.clone())).collect()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            write!(f, "{sign}")?;
            let a = c.abs();
            if m.0.is_empty() {
                write!(f, "{a}")?;
                continue;
            }
            if a != 1 {
                write!(f, "{a}*")?;
            }
            let parts: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
                .collect();
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// `Z[x_0, x_1, ...]` as a [`Ring`].
#[derive(Clone, Copy, Debug, Default)]
pub struct PolyRing;

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn one(&self) -> Poly {
        Poly::constant(1)
    }

    fn from_int(&self, n: i64) -> Poly {
        Poly::constant(n)
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }

    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn div_int(&self, a: &Poly, d: i64) -> Option<Poly> {
        a.div_exact(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|ts| {
            ts.into_iter().fold(Poly::zero(), |acc, (c, a, b, d)| {
                let m = Poly::var(0).pow(a).mul(&Poly::var(1).pow(b)).mul(&Poly::var(2).pow(d));
                acc.add(&m.scale(c))
            })
        })
    }

    #[test]
    fn basic_arithmetic() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq, x.mul(&x).add(&x.mul(&y).scale(2)).add(&y.mul(&y)));
        assert!(s.sub(&s).is_zero());
        assert_eq!(sq.to_string(), "2*x0*x1+x0^2+x1^2");
        assert_eq!(Poly::constant(0), Poly::zero());
        assert!(sq.is_homogeneous_in(|_| true, 2));
        assert!(!sq.is_homogeneous_in(|v| v == 0, 2));
        assert_eq!(sq.div_exact(2), None);
        assert_eq!(x.scale(6).div_exact(3), Some(x.scale(2)));
    }

    #[test]
    fn substitution_and_evaluation() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let p = x.mul(&y).add(&Poly::constant(3));
        let q = p.substitute(&|v| (v == 0).then(|| y.scale(2)));
        assert_eq!(q, y.mul(&y).scale(2).add(&Poly::constant(3)));
        let val = p.eval(&super::super::Integers, &|v| if v == 0 { 4 } else { 5 });
        assert_eq!(val, 23);
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            prop_assert!(a.terms().all(|(_, c)| c != 0));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_poly(), b in small_poly(), x in -4i64..4, y in -4i64..4, z in -4i64..4) {
            let val = |v: Var| [x, y, z][v as usize];
            let r = super::super::Integers;
            prop_assert_eq!(a.mul(&b).eval(&r, &val), a.eval(&r, &val) * b.eval(&r, &val));
            prop_assert_eq!(a.add(&b).eval(&r, &val), a.eval(&r, &val) + b.eval(&r, &val));
        }
    }
}
