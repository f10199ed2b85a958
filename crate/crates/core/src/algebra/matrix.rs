//! Sparse square matrices over a [`Ring`], stored row by row.

use super::Ring;

/// A square matrix; each row is a list of `(column, entry)` pairs sorted by
/// column with no zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    n: usize,
    rows: Vec<Vec<(u32, E)>>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zero(n: usize) -> Self {
        Matrix { n, rows: vec![Vec::new(); n] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix { n, rows: (0..n).map(|i| vec![(i as u32, ring.one())]).collect() }
    }

    /// Build from `(row, col, entry)` triples; repeated positions are summed.
    pub fn from_entries<R: Ring<Elem = E>>(ring: &R, n: usize, entries: impl IntoIterator<Item = (usize, usize, E)>) -> Self {
        let mut m = Self::zero(n);
        for (i, j, e) in entries {
            let cur = m.get(ring, i, j);
            m.set(ring, i, j, ring.add(&cur, &e));
        }
        m
    }

    /// Convert an integer matrix into the ring.
    pub fn from_int<R: Ring<Elem = E>>(ring: &R, m: &Matrix<i64>) -> Self {
        Matrix {
            n: m.n,
            rows: m
                .rows
                .iter()
                .map(|row| {
                    row.iter().map(|&(j, v)| (j, ring.from_int(v))).filter(|(_, e)| !ring.is_zero(e)).collect()
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<(u32, E)>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[(u32, E)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get<R: Ring<Elem = E>>(&self, ring: &R, i: usize, j: usize) -> E {
        match self.rows[i].binary_search_by_key(&(j as u32), |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => ring.zero(),
        }
    }

    pub fn set<R: Ring<Elem = E>>(&mut self, ring: &R, i: usize, j: usize, e: E) {
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&(j as u32), |(c, _)| *c) {
            Ok(k) => {
                if ring.is_zero(&e) {
                    row.remove(k);
                } else {
                    row[k].1 = e;
                }
            }
            Err(k) => {
                if !ring.is_zero(&e) {
                    row.insert(k, (j as u32, e));
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_identity<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.len() == 1 && r[0].0 as usize == i && r[0].1 == ring.one())
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.n];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, e) in row {
                rows[*j as usize].push((i as u32, e.clone()));
            }
        }
        Matrix { n: self.n, rows }
    }

    pub fn map<F, R: Ring>(&self, ring: &R, f: F) -> Matrix<R::Elem>
    where
        F: Fn(&E) -> R::Elem,
    {
        Matrix {
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(j, e)| (*j, f(e))).filter(|(_, e)| !ring.is_zero(e)).collect())
                .collect(),
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| merge(ring, a, b)).collect();
        Matrix { n: self.n, rows }
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Matrix { n: self.n, rows: self.rows.iter().map(|r| r.iter().map(|(j, e)| (*j, ring.neg(e))).collect()).collect() }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(ring, |e| ring.mul(c, e))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut acc: Vec<Option<E>> = vec![None; self.n];
        let mut touched: Vec<u32> = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for (k, a) in row {
                    for (j, b) in &other.rows[*k as usize] {
                        let p = ring.mul(a, b);
                        match &mut acc[*j as usize] {
                            Some(cur) => *cur = ring.add(cur, &p),
                            slot @ None => {
                                *slot = Some(p);
                                touched.push(*j);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                let out: Vec<(u32, E)> = touched
                    .drain(..)
                    .filter_map(|j| acc[j as usize].take().filter(|e| !ring.is_zero(e)).map(|e| (j, e)))
                    .collect();
                out
            })
            .collect();
        Matrix { n: self.n, rows }
    }

    /// `self * v` for a sparse column vector.
    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, v: &[(u32, E)]) -> Vec<(u32, E)> {
        self.transpose_apply_rows(ring, v)
    }

    fn transpose_apply_rows<R: Ring<Elem = E>>(&self, ring: &R, v: &[(u32, E)]) -> Vec<(u32, E)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut s = ring.zero();
            let (mut a, mut b) = (0, 0);
            while a < row.len() && b < v.len() {
                match row[a].0.cmp(&v[b].0) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        s = ring.add(&s, &ring.mul(&row[a].1, &v[b].1));
                        a += 1;
                        b += 1;
                    }
                }
            }
            if !ring.is_zero(&s) {
                out.push((i as u32, s));
            }
        }
        out
    }

    /// `self * other - other * self`.
    pub fn bracket<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.mul(ring, other).sub(ring, &other.mul(ring, self))
    }

    /// Entrywise exact division by an integer, if every entry divides.
    pub fn div_int<R: Ring<Elem = E>>(&self, ring: &R, d: i64) -> Option<Self> {
        let mut rows = Vec::with_capacity(self.n);
        for row in &self.rows {
            let mut r = Vec::with_capacity(row.len());
            for (j, e) in row {
                r.push((*j, ring.div_int(e, d)?));
            }
            rows.push(r);
        }
        Some(Matrix { n: self.n, rows })
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, k: u32) -> Self {
        let mut r = Self::identity(ring, self.n);
        for _ in 0..k {
            r = r.mul(ring, self);
        }
        r
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<E>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(ring, i, j)).collect()).collect()
    }
}

fn merge<R: Ring>(ring: &R, a: &[(u32, R::Elem)], b: &[(u32, R::Elem)]) -> Vec<(u32, R::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push(b[j].clone());
            j += 1;
        } else {
            let s = ring.add(&a[i].1, &b[j].1);
            if !ring.is_zero(&s) {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
