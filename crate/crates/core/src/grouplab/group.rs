//! Enumerated matrix groups of dimension at most 4 over finite rings, and
//! subgroups stored as bitsets over their elements.

use std::collections::VecDeque;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteRing, Matrix};
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 4;

/// A dense matrix of dimension `<= 4`, row-major, unused entries zero.
pub type Mat = [u8; 16];

pub fn mat_identity(dim: usize) -> Mat {
    let mut m = [0; 16];
    for i in 0..dim {
        m[i * MAX_DIM + i] = 1;
    }
    m
}

pub fn mat_mul(ring: &FiniteRing, dim: usize, a: &Mat, b: &Mat) -> Mat {
    let mut c = [0u8; 16];
    for i in 0..dim {
        for k in 0..dim {
            let x = a[i * MAX_DIM + k];
            if x == 0 {
                continue;
            }
            for j in 0..dim {
                let y = b[k * MAX_DIM + j];
                if y != 0 {
                    let e = &mut c[i * MAX_DIM + j];
                    *e = ring.add_u8(*e, ring.mul_u8(x, y));
                }
            }
        }
    }
    c
}

pub fn mat_from(ring: &FiniteRing, m: &Matrix<u8>) -> Result<Mat> {
    let n = m.dim();
    if n > MAX_DIM {
        return Err(Error::Precondition(format!("dense matrices have dimension <= {MAX_DIM}, got {n}")));
    }
    let mut out = [0; 16];
    for (i, row) in m.to_dense(ring).iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            out[i * MAX_DIM + j] = e;
        }
    }
    Ok(out)
}

/// Entries of a dense matrix as a nested list.
pub fn mat_rows(m: &Mat, dim: usize) -> Vec<Vec<u8>> {
    (0..dim).map(|i| m[i * MAX_DIM..i * MAX_DIM + dim].to_vec()).collect()
}

/// The label of a generator `X_α(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenLabel {
    pub alpha: usize,
    pub v: Vec<u8>,
}

/// A finite group of matrices, enumerated by breadth-first search from the
/// identity. Element 0 is the identity; every other element records the
/// element and generator it was first reached from.
pub struct MatrixGroup {
    ring: FiniteRing,
    dim: usize,
    labels: Vec<GenLabel>,
    gens: Vec<Mat>,
    elements: Vec<Mat>,
    index: FxHashMap<Mat, u32>,
    parent: Vec<u32>,
    via: Vec<u16>,
    inverses: OnceLock<Vec<u32>>,
}

impl MatrixGroup {
    /// BFS closure of `gens` under right multiplication.
    pub fn generate(ring: FiniteRing, dim: usize, gens: Vec<(GenLabel, Mat)>, budget: usize) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::Precondition(format!("dimension {dim} exceeds {MAX_DIM}")));
        }
        if gens.len() > u16::MAX as usize {
            return Err(Error::Precondition("too many generators".into()));
        }
        let (labels, gens): (Vec<_>, Vec<_>) = gens.into_iter().unzip();
        let id = mat_identity(dim);
        let mut g = MatrixGroup {
            ring,
            dim,
            labels,
            gens,
            elements: vec![id],
            index: FxHashMap::default(),
            parent: vec![0],
            via: vec![u16::MAX],
            inverses: OnceLock::new(),
        };
        g.index.insert(id, 0);
        let mut head = 0;
        while head < g.elements.len() {
            let x = g.elements[head];
            for k in 0..g.gens.len() {
                let y = mat_mul(&g.ring, dim, &x, &g.gens[k]);
                if g.index.contains_key(&y) {
                    continue;
                }
                if g.elements.len() >= budget {
                    return Err(Error::Budget { what: "matrix group elements".into(), limit: budget });
                }
                g.index.insert(y, g.elements.len() as u32);
                g.elements.push(y);
                g.parent.push(head as u32);
                g.via.push(k as u16);
            }
            head += 1;
        }
        Ok(g)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[GenLabel] {
        &self.labels
    }

    pub fn generator(&self, k: usize) -> &Mat {
        &self.gens[k]
    }

    pub fn generator_index(&self, k: usize) -> u32 {
        self.index[&self.gens[k]]
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn element(&self, i: u32) -> &Mat {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, m: &Mat) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn mul_mat(&self, a: &Mat, b: &Mat) -> Mat {
        mat_mul(&self.ring, self.dim, a, b)
    }

    /// Index of the product; panics if the group is not closed, which BFS
    /// enumeration rules out.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let m = self.mul_mat(&self.elements[a as usize], &self.elements[b as usize]);
        self.index[&m]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.inverses()[a as usize]
    }

    fn inverses(&self) -> &[u32] {
        self.inverses.get_or_init(|| {
            let inv_gens: Vec<Mat> = (0..self.gens.len())
                .map(|k| {
                    // the inverse of a generator is a power of it
                    let mut p = self.gens[k];
                    loop {
                        let next = self.mul_mat(&p, &self.gens[k]);
                        if next == mat_identity(self.dim) {
                            break p;
                        }
                        p = next;
                    }
                })
                .collect();
            let mut inv = vec![0u32; self.len()];
            // (parent * g)^{-1} = g^{-1} * parent^{-1}; parents come first
            for i in 1..self.len() {
                let p = inv[self.parent[i] as usize] as usize;
                let m = self.mul_mat(&inv_gens[self.via[i] as usize], &self.elements[p]);
                inv[i] = self.index[&m];
            }
            inv
        })
    }

    /// `b^{-1} a b`.
    pub fn conjugate(&self, a: u32, b: u32) -> u32 {
        let m = self.mul_mat(&self.elements[self.inverse(b) as usize], &self.elements[a as usize]);
        self.index[&self.mul_mat(&m, &self.elements[b as usize])]
    }

    /// A word in the generators evaluating to element `i`.
    pub fn word(&self, mut i: u32) -> Vec<usize> {
        let mut w = Vec::new();
        while i != 0 {
            w.push(self.via[i as usize] as usize);
            i = self.parent[i as usize];
        }
        w.reverse();
        w
    }

    /// Word length of the BFS witness of `i`.
    pub fn depth(&self, i: u32) -> usize {
        self.word(i).len()
    }

    pub fn trivial(&self) -> Subgroup {
        let mut h = Subgroup::empty(self.len());
        h.insert(0);
        h
    }

    pub fn whole(&self) -> Subgroup {
        let mut h = Subgroup::empty(self.len());
        h.fill(self.len());
        h.gens = (0..self.gens.len()).map(|k| self.generator_index(k)).collect();
        h
    }

    /// Add `x` to the subgroup `h`, closing under multiplication by coset
    /// representatives.
    pub fn extend(&self, h: &mut Subgroup, x: u32) {
        if h.contains(x) {
            return;
        }
        h.gens.push(x);
        let old: Vec<u32> = h.elements.clone();
        let gens = h.gens.clone();
        let mut reps: Vec<u32> = vec![0];
        let add_coset = |h: &mut Subgroup, y: u32| {
            let ym = self.elements[y as usize];
            for &e in &old {
                let m = self.mul_mat(&self.elements[e as usize], &ym);
                h.insert(self.index[&m]);
            }
        };
        // an order above the largest proper divisor of |G| that |H| divides
        // forces the whole group
        let m = self.len() / old.len();
        let p = (2..=m).find(|d| m % d == 0).unwrap_or(1);
        let bound = old.len() * m / p;
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in &gens {
                let y = self.mul(r, s);
                if !h.contains(y) {
                    add_coset(h, y);
                    reps.push(y);
                    if h.len() > bound {
                        h.fill(self.len());
                        return;
                    }
                }
            }
            i += 1;
        }
    }

    /// The subgroup generated by `seeds`.
    pub fn closure(&self, seeds: &[u32]) -> Subgroup {
        let mut h = self.trivial();
        for &s in seeds {
            self.extend(&mut h, s);
        }
        h
    }

    /// The smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[u32]) -> Subgroup {
        let mut h = self.trivial();
        let mut queue: VecDeque<u32> = seeds.iter().copied().collect();
        let gens: Vec<u32> = (0..self.gens.len()).map(|k| self.generator_index(k)).collect();
        while let Some(x) = queue.pop_front() {
            if h.contains(x) {
                continue;
            }
            self.extend(&mut h, x);
            // once every conjugate of every added generator is inside, h is normal
            queue.extend(gens.iter().map(|&g| self.conjugate(x, g)));
        }
        h
    }

    /// Normality in the whole group: conjugates of the subgroup's generators
    /// by the group's generators stay inside.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens: Vec<u32> = (0..self.gens.len()).map(|k| self.generator_index(k)).collect();
        let hgens = if h.gens.is_empty() && h.len() > 1 { h.elements.clone() } else { h.gens.clone() };
        hgens.iter().all(|&x| gens.iter().all(|&g| h.contains(self.conjugate(x, g))))
    }

    /// The subset with the given members, for sets already known to be
    /// subgroups. It records no generators and cannot be extended.
    pub fn subset(&self, members: impl IntoIterator<Item = u32>) -> Subgroup {
        let mut h = Subgroup::empty(self.len());
        for i in members {
            h.insert(i);
        }
        h
    }
}

/// A subset of an enumerated group, with the generators it was built from.
#[derive(Clone, Debug)]
pub struct Subgroup {
    bits: Vec<u64>,
    elements: Vec<u32>,
    gens: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn empty(order: usize) -> Self {
        Subgroup { bits: vec![0; order.div_ceil(64)], elements: Vec::new(), gens: Vec::new() }
    }

    fn insert(&mut self, i: u32) -> bool {
        let (w, b) = (i as usize / 64, i % 64);
        if self.bits[w] >> b & 1 == 1 {
            return false;
        }
        self.bits[w] |= 1 << b;
        self.elements.push(i);
        true
    }

    fn fill(&mut self, order: usize) {
        for i in 0..order as u32 {
            self.insert(i);
        }
    }

    pub fn contains(&self, i: u32) -> bool {
        self.bits[i as usize / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elementary(n: usize, q: u32) -> MatrixGroup {
        let ring = FiniteRing::field(q).unwrap();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut m = mat_identity(n);
                    m[i * MAX_DIM + j] = 1;
                    gens.push((GenLabel { alpha: i * n + j, v: vec![1] }, m));
                }
            }
        }
        MatrixGroup::generate(ring, n, gens, 1 << 20).unwrap()
    }

    #[test]
    fn sl_orders() {
        assert_eq!(elementary(2, 2).len(), 6);
        assert_eq!(elementary(3, 2).len(), 168);
        assert_eq!(elementary(2, 3).len(), 24);
    }

    #[test]
    fn inverses_and_words() {
        let g = elementary(3, 2);
        for i in 0..g.len() as u32 {
            assert_eq!(g.mul(i, g.inverse(i)), 0);
            let w = g.word(i);
            let m = w.iter().fold(mat_identity(3), |m, &k| g.mul_mat(&m, g.generator(k)));
            assert_eq!(g.index_of(&m), Some(i));
        }
    }

    #[test]
    fn closures() {
        let g = elementary(3, 2);
        assert_eq!(g.closure(&[0]).len(), 1);
        // a single transvection has order 2
        assert_eq!(g.closure(&[g.generator_index(0)]).len(), 2);
        // SL3(F2) is simple
        let n = g.normal_closure(&[g.generator_index(0)]);
        assert_eq!(n.len(), 168);
        assert!(g.is_normal(&n));
        assert!(!g.is_normal(&g.closure(&[g.generator_index(0)])));
    }

    #[test]
    fn budget_is_enforced() {
        let ring = FiniteRing::field(3).unwrap();
        let mut m = mat_identity(2);
        m[1] = 1;
        let mut l = mat_identity(2);
        l[MAX_DIM] = 1;
        let gens = vec![(GenLabel { alpha: 0, v: vec![1] }, m), (GenLabel { alpha: 1, v: vec![1] }, l)];
        assert!(matches!(MatrixGroup::generate(ring, 2, gens, 10), Err(Error::Budget { .. })));
    }
}
