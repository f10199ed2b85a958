//! Exact arithmetic used by the group computations: a small ring
//! abstraction, sparse integer polynomials, explicit finite rings and sparse
//! matrices over any of them.

pub mod finite;
pub mod matrix;
pub mod poly;

use std::fmt::Debug;
use std::hash::Hash;

pub use finite::{FiniteRing, Ideal};
pub use matrix::Matrix;
pub use poly::{Poly, PolyRing};

/// A commutative ring with 1, given as a context object acting on plain
/// element values.
pub trait Ring {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// The unique `x` with `d x = a`, if there is exactly one.
    fn div_int(&self, a: &Self::Elem, d: i64) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        let mut r = self.one();
        for _ in 0..k {
            r = self.mul(&r, a);
        }
        r
    }
}

/// The integers with overflow-checked `i64` arithmetic.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }

    fn one(&self) -> i64 {
        1
    }

    fn from_int(&self, n: i64) -> i64 {
        n
    }

    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("integer overflow")
    }

    fn neg(&self, a: &i64) -> i64 {
        -a
    }

    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("integer overflow")
    }

    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }

    fn div_int(&self, a: &i64, d: i64) -> Option<i64> {
        (d != 0 && a % d == 0).then(|| a / d)
    }
}
