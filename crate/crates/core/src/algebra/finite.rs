//! Explicit finite commutative rings with full operation tables.
//!
//! Elements are `u8` codes `0..size`. Supported presentations are `Z/n` and
//! `F_p[x]/(f)` for a monic `f`, which covers the finite fields `F_q` and
//! truncated polynomial rings `F_p[t]/(t^k)`. Quotients by ideals are built
//! from the tables directly.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Ring;
use crate::error::{Error, Result};

/// Largest supported ring size.
pub const MAX_RING_SIZE: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingKind {
    /// `Z/n`.
    Zmod(u32),
    /// `F_p[var]/(f)` with `f` monic, coefficients in ascending degree.
    PolyQuotient { p: u32, f: Vec<u32>, var: char },
    /// A quotient of another ring by an ideal; elements are cosets.
    Quotient { parent: String, ideal: Vec<u8> },
}

/// An ideal, stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ideal(pub Vec<u8>);

impl Ideal {
    pub fn contains(&self, x: u8) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }
}

#[derive(Clone)]
pub struct FiniteRing {
    name: String,
    kind: RingKind,
    size: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({})", self.name)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.add == other.add && self.mul == other.mul
    }
}

impl FiniteRing {
    pub fn zmod(n: u32) -> Result<Self> {
        if n < 2 || n as usize > MAX_RING_SIZE {
            return Err(Error::UnsupportedRing(format!("Z/{n}")));
        }
        let size = n as usize;
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = ((a + b) % size) as u8;
                mul[a * size + b] = ((a * b) % size) as u8;
            }
        }
        let neg = (0..size).map(|a| ((size - a) % size) as u8).collect();
        let labels = (0..size).map(|a| a.to_string()).collect();
        Ok(FiniteRing { name: format!("Z/{n}"), kind: RingKind::Zmod(n), size, add, mul, neg, labels })
    }

    /// `F_p[var]/(f)`; `f` is monic of degree `k >= 1`, coefficients ascending.
    pub fn poly_quotient(p: u32, f: &[u32], var: char, name: &str) -> Result<Self> {
        let k = f.len().saturating_sub(1);
        if !is_prime(p) || k == 0 || f[k] != 1 {
            return Err(Error::UnsupportedRing(format!("F_{p}[{var}]/({f:?})")));
        }
        let size = (p as usize).checked_pow(k as u32).filter(|&s| s <= MAX_RING_SIZE).ok_or_else(|| {
            Error::UnsupportedRing(format!("{name} has more than {MAX_RING_SIZE} elements"))
        })?;
        let p_us = p as usize;
        let digits = |mut a: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = a % p_us;
                    a /= p_us;
                    d
                })
                .collect()
        };
        let encode = |d: &[usize]| d.iter().rev().fold(0usize, |acc, &x| acc * p_us + x);
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for a in 0..size {
            let da = digits(a);
            for b in 0..size {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p_us).collect();
                add[a * size + b] = encode(&s) as u8;
                // schoolbook product then reduce by f
                let mut prod = vec![0usize; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p_us;
                    }
                }
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, &fi) in f[..k].iter().enumerate() {
                            let sub = c * fi as usize % p_us;
                            prod[deg - k + i] = (prod[deg - k + i] + p_us - sub) % p_us;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * size + b] = encode(&prod[..k]) as u8;
            }
        }
        let neg = (0..size).map(|a| encode(&digits(a).iter().map(|d| (p_us - d) % p_us).collect::<Vec<_>>()) as u8).collect();
        let labels = (0..size).map(|a| poly_label(&digits(a), var)).collect();
        Ok(FiniteRing {
            name: name.to_string(),
            kind: RingKind::PolyQuotient { p, f: f.to_vec(), var },
            size,
            add,
            mul,
            neg,
            labels,
        })
    }

    /// The field with `q = p^k` elements, as `F_p[x]/(f)` for the first
    /// monic irreducible `f` in lexicographic order.
    pub fn field(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::UnsupportedRing(format!("F{q}: not a prime power")))?;
        if k == 1 {
            let mut r = Self::zmod(p)?;
            r.name = format!("F{p}");
            return Ok(r);
        }
        let count = (p as usize).pow(k);
        for code in 0..count {
            let mut f: Vec<u32> = (0..k).map(|i| (code / (p as usize).pow(i) % p as usize) as u32).collect();
            f.push(1);
            let r = Self::poly_quotient(p, &f, 'x', &format!("F{q}"))?;
            if r.is_field() {
                return Ok(r);
            }
        }
        Err(Error::UnsupportedRing(format!("no irreducible polynomial for F{q}")))
    }

    /// `F_p[t]/(t^k)`.
    pub fn truncated(p: u32, k: usize) -> Result<Self> {
        let mut f = vec![0; k + 1];
        f[k] = 1;
        Self::poly_quotient(p, &f, 't', &format!("F{p}[t]/(t^{k})"))
    }

    /// Parse names such as `Z/4`, `Z4`, `F3`, `F4`, `F2[t]/(t^2)`.
    pub fn parse(name: &str) -> Result<Self> {
        let s: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::UnsupportedRing(format!("cannot parse ring {name:?}"));
        if let Some(rest) = s.strip_prefix("Z/").or_else(|| s.strip_prefix('Z')) {
            let n: u32 = rest.parse().map_err(|_| bad())?;
            return Self::zmod(n);
        }
        if let Some(rest) = s.strip_prefix('F') {
            if let Some((p, tail)) = rest.split_once("[t]/(t^") {
                let p: u32 = p.parse().map_err(|_| bad())?;
                let k: usize = tail.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                return Self::truncated(p, k);
            }
            let q: u32 = rest.parse().map_err(|_| bad())?;
            return Self::field(q);
        }
        Err(bad())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.size).map(|a| a as u8)
    }

    #[inline]
    pub fn add_u8(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul_u8(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg_u8(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn label(&self, a: u8) -> &str {
        &self.labels[a as usize]
    }

    pub fn parse_element(&self, s: &str) -> Result<u8> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        self.labels
            .iter()
            .position(|l| *l == t)
            .map(|i| i as u8)
            .ok_or_else(|| Error::Parse(format!("{s:?} is not an element of {}", self.name)))
    }

    /// The image of the integer `n`.
    pub fn int(&self, n: i64) -> u8 {
        let c = self.characteristic() as i64;
        let r = n.rem_euclid(c);
        let mut acc = 0u8;
        for _ in 0..r {
            acc = self.add_u8(acc, 1);
        }
        acc
    }

    pub fn characteristic(&self) -> usize {
        let mut acc = 1u8;
        let mut n = 1;
        while acc != 0 {
            acc = self.add_u8(acc, 1);
            n += 1;
        }
        n
    }

    pub fn inverse(&self, a: u8) -> Option<u8> {
        self.elements().find(|&b| self.mul_u8(a, b) == 1)
    }

    pub fn is_unit(&self, a: u8) -> bool {
        self.inverse(a).is_some()
    }

    pub fn units(&self) -> Vec<u8> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn is_field(&self) -> bool {
        self.elements().skip(1).all(|a| self.is_unit(a))
    }

    /// Smallest ideal containing `gens`.
    pub fn ideal_generated(&self, gens: &[u8]) -> Ideal {
        let products: BTreeSet<u8> =
            gens.iter().flat_map(|&g| self.elements().map(move |r| (r, g))).map(|(r, g)| self.mul_u8(r, g)).collect();
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut queue = VecDeque::from([0u8]);
        while let Some(x) = queue.pop_front() {
            for &g in &products {
                let y = self.add_u8(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        Ideal(self.elements().filter(|&a| seen[a as usize]).collect())
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal(vec![0])
    }

    pub fn unit_ideal(&self) -> Ideal {
        Ideal(self.elements().collect())
    }

    /// Whether `set` is an ideal (checked by closure).
    pub fn is_ideal(&self, set: &[u8]) -> bool {
        let s: BTreeSet<u8> = set.iter().copied().collect();
        s.contains(&0)
            && s.iter().all(|&a| s.iter().all(|&b| s.contains(&self.add_u8(a, b))))
            && s.iter().all(|&a| self.elements().all(|r| s.contains(&self.mul_u8(r, a))))
    }

    /// Every ideal, ordered by size then elements.
    pub fn ideals(&self) -> Vec<Ideal> {
        let mut found: BTreeSet<Ideal> = BTreeSet::new();
        let zero = self.zero_ideal();
        let mut queue = vec![zero.clone()];
        found.insert(zero);
        while let Some(i) = queue.pop() {
            for x in self.elements() {
                if i.contains(x) {
                    continue;
                }
                let mut gens = i.0.clone();
                gens.push(x);
                let j = self.ideal_generated(&gens);
                if found.insert(j.clone()) {
                    queue.push(j);
                }
            }
        }
        let mut out: Vec<Ideal> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        let all = self.ideals();
        let proper: Vec<&Ideal> = all.iter().filter(|i| i.len() < self.size).collect();
        proper
            .iter()
            .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
            .map(|i| (*i).clone())
            .collect()
    }

    pub fn is_local(&self) -> bool {
        self.maximal_ideals().len() == 1
    }

    /// Human readable name of an ideal, e.g. `(0)`, `R`, `(2)`, `(t)`.
    pub fn ideal_name(&self, i: &Ideal) -> String {
        if i.len() == 1 {
            return "(0)".into();
        }
        if i.len() == self.size {
            return "R".into();
        }
        // smallest principal generator by element code
        match i.0.iter().copied().find(|&g| g != 0 && &self.ideal_generated(&[g]) == i) {
            Some(g) => format!("({})", self.label(g)),
            None => format!("{{{}}}", i.0.iter().map(|&a| self.label(a)).collect::<Vec<_>>().join(",")),
        }
    }

    /// The quotient ring `R/I` together with the residue map.
    pub fn quotient(&self, ideal: &Ideal) -> (FiniteRing, Vec<u8>) {
        let mut class = vec![u8::MAX; self.size];
        let mut reps: Vec<u8> = Vec::new();
        for a in self.elements() {
            if class[a as usize] != u8::MAX {
                continue;
            }
            let c = reps.len() as u8;
            reps.push(a);
            for &i in &ideal.0 {
                class[self.add_u8(a, i) as usize] = c;
            }
        }
        let size = reps.len();
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for (x, &a) in reps.iter().enumerate() {
            for (y, &b) in reps.iter().enumerate() {
                add[x * size + y] = class[self.add_u8(a, b) as usize];
                mul[x * size + y] = class[self.mul_u8(a, b) as usize];
            }
        }
        let neg = reps.iter().map(|&a| class[self.neg_u8(a) as usize]).collect();
        let labels = reps.iter().map(|&a| self.labels[a as usize].clone()).collect();
        let name = format!("{}/{}", self.name, self.ideal_name(ideal));
        let ring = FiniteRing {
            name,
            kind: RingKind::Quotient { parent: self.name.clone(), ideal: ideal.0.clone() },
            size,
            add,
            mul,
            neg,
            labels,
        };
        (ring, class)
    }

    /// A small set whose additive span is the whole ring, chosen greedily
    /// in element order.
    pub fn additive_generators(&self) -> Vec<u8> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.size];
        span[0] = true;
        for a in self.elements() {
            if span[a as usize] {
                continue;
            }
            gens.push(a);
            let mut queue: VecDeque<u8> = self.elements().filter(|&x| span[x as usize]).collect();
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.add_u8(x, g);
                    if !span[y as usize] {
                        span[y as usize] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        gens
    }
}

fn poly_label(d: &[usize], var: char) -> String {
    let mut parts = Vec::new();
    for (i, &c) in d.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl Ring for FiniteRing {
    type Elem = u8;

    fn zero(&self) -> u8 {
        0
    }

    fn one(&self) -> u8 {
        1
    }

    fn from_int(&self, n: i64) -> u8 {
        self.int(n)
    }

    fn add(&self, a: &u8, b: &u8) -> u8 {
        self.add_u8(*a, *b)
    }

    fn neg(&self, a: &u8) -> u8 {
        self.neg_u8(*a)
    }

    fn mul(&self, a: &u8, b: &u8) -> u8 {
        self.mul_u8(*a, *b)
    }

    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }

    fn div_int(&self, a: &u8, d: i64) -> Option<u8> {
        let d = self.int(d);
        let mut sols = self.elements().filter(|&x| self.mul_u8(d, x) == *a);
        let first = sols.next()?;
        sols.next().is_none().then_some(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms(r: &FiniteRing) {
        let els: Vec<u8> = r.elements().collect();
        for &a in &els {
            assert_eq!(r.add_u8(a, r.neg_u8(a)), 0);
            assert_eq!(r.mul_u8(a, 1), a);
            for &b in &els {
                assert_eq!(r.add_u8(a, b), r.add_u8(b, a));
                assert_eq!(r.mul_u8(a, b), r.mul_u8(b, a));
                for &c in &els {
                    assert_eq!(r.mul_u8(a, r.add_u8(b, c)), r.add_u8(r.mul_u8(a, b), r.mul_u8(a, c)));
                    assert_eq!(r.mul_u8(r.mul_u8(a, b), c), r.mul_u8(a, r.mul_u8(b, c)));
                }
            }
        }
    }

    #[test]
    fn ring_axioms_hold() {
        for name in ["Z/4", "F2", "F3", "F4", "F5", "F8", "F9", "F2[t]/(t^2)", "F3[t]/(t^2)", "Z/6"] {
            axioms(&FiniteRing::parse(name).unwrap());
        }
    }

    #[test]
    fn ideal_lattices() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let ideals = z4.ideals();
        assert_eq!(ideals.len(), 3);
        assert_eq!(z4.ideal_name(&ideals[1]), "(2)");
        assert!(z4.is_local());
        let z6 = FiniteRing::zmod(6).unwrap();
        assert_eq!(z6.ideals().len(), 4);
        assert!(!z6.is_local());
        let f4 = FiniteRing::parse("F4").unwrap();
        assert!(f4.is_field());
        assert_eq!(f4.ideals().len(), 2);
        let d = FiniteRing::parse("F2[t]/(t^2)").unwrap();
        assert_eq!(d.ideals().len(), 3);
        assert_eq!(d.ideal_name(&d.ideals()[1]), "(t)");
        for r in [&z4, &z6, &f4, &d] {
            for i in r.ideals() {
                assert!(r.is_ideal(&i.0));
            }
        }
    }

    #[test]
    fn quotients() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let (q, map) = z4.quotient(&z4.ideal_generated(&[2]));
        assert_eq!(q.size(), 2);
        assert!(q.is_field());
        for a in z4.elements() {
            for b in z4.elements() {
                assert_eq!(map[z4.mul_u8(a, b) as usize], q.mul_u8(map[a as usize], map[b as usize]));
                assert_eq!(map[z4.add_u8(a, b) as usize], q.add_u8(map[a as usize], map[b as usize]));
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        let d = FiniteRing::parse("F3[t]/(t^2)").unwrap();
        for a in d.elements() {
            assert_eq!(d.parse_element(d.label(a)).unwrap(), a);
        }
        assert_eq!(d.label(d.parse_element("1+2t").unwrap()), "1+2t");
        assert_eq!(FiniteRing::parse("F4").unwrap().additive_generators().len(), 2);
        assert_eq!(FiniteRing::parse("Z/4").unwrap().additive_generators(), vec![1]);
        assert!(FiniteRing::parse("F6").is_err());
        assert_eq!(FiniteRing::parse("F9").unwrap().characteristic(), 3);
        assert_eq!(FiniteRing::parse("F5").unwrap().div_int(&1, 2), Some(3));
        assert_eq!(FiniteRing::parse("Z/4").unwrap().div_int(&2, 2), None);
    }
}
