//! HLT coset enumeration with lookahead.
//!
//! Words are lists of signed 1-based generator ids, `-k` standing for the
//! inverse of generator `k`. Cosets are scanned in definition order; when
//! the table is full every live coset is scanned against every relator
//! without defining new cosets, the table is compacted and enumeration
//! resumes. If that frees nothing the enumeration overflows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default limit on simultaneously allocated cosets.
pub const DEFAULT_BUDGET: usize = 2_000_000;

const NONE: u32 = u32::MAX;

pub type Word = Vec<i32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableStatus {
    Complete,
    Overflow,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumStats {
    pub defined: usize,
    pub max_allocated: usize,
    pub lookaheads: usize,
}

/// A coset table. Column `2k` is generator `k` (0-based), column `2k + 1`
/// its inverse.
#[derive(Clone, Debug)]
pub struct CosetTable {
    ngens: usize,
    table: Vec<u32>,
    rows: usize,
    pub status: TableStatus,
    pub stats: EnumStats,
}

fn column(letter: i32) -> usize {
    debug_assert!(letter != 0);
    if letter > 0 {
        2 * (letter as usize - 1)
    } else {
        2 * (-letter as usize - 1) + 1
    }
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    /// The coset `c · letter`.
    pub fn act(&self, c: usize, letter: i32) -> usize {
        self.table[c * 2 * self.ngens + column(letter)] as usize
    }

    /// The coset `c · w`.
    pub fn trace(&self, c: usize, w: &[i32]) -> usize {
        w.iter().fold(c, |c, &x| self.act(c, x))
    }

    /// Breadth-first spanning tree from coset 0: for each coset its parent
    /// and the generator letter leading to it (`0` for the root).
    pub fn spanning_tree(&self) -> Vec<(usize, i32)> {
        let mut tree = vec![(usize::MAX, 0); self.rows];
        tree[0] = (0, 0);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for k in 1..=self.ngens as i32 {
                for x in [k, -k] {
                    let d = self.act(c, x);
                    if tree[d].0 == usize::MAX {
                        tree[d] = (c, x);
                        queue.push_back(d);
                    }
                }
            }
        }
        tree
    }

    /// Representative words read off a spanning tree.
    pub fn representative(tree: &[(usize, i32)], mut c: usize) -> Word {
        let mut w = Vec::new();
        while c != 0 {
            let (p, x) = tree[c];
            w.push(x);
            c = p;
        }
        w.reverse();
        w
    }

    /// The cosets reachable from 0 using only the given generators.
    pub fn orbit(&self, gens: &[i32]) -> usize {
        let mut seen = vec![false; self.rows];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(c) = stack.pop() {
            for &g in gens {
                for x in [g, -g] {
                    let d = self.act(c, x);
                    if !seen[d] {
                        seen[d] = true;
                        count += 1;
                        stack.push(d);
                    }
                }
            }
        }
        count
    }
}

struct Enumerator<'a> {
    ncols: usize,
    relators: &'a [Vec<usize>],
    table: Vec<u32>,
    parent: Vec<u32>,
    budget: usize,
    queue: Vec<u32>,
    stats: EnumStats,
}

impl Enumerator<'_> {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.ncols + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) {
        let d = self.rows() as u32;
        self.table.extend(std::iter::repeat(NONE).take(self.ncols));
        self.parent.push(d);
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.stats.defined += 1;
        self.stats.max_allocated = self.stats.max_allocated.max(self.rows());
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (lo, hi) = (x.min(y), x.max(y));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let (m, n) = (self.rep(g), self.rep(d));
                let mx = self.get(m, x);
                if mx != NONE {
                    self.merge(n, mx);
                } else {
                    let nx = self.get(n, x ^ 1);
                    if nx != NONE {
                        self.merge(m, nx);
                    } else {
                        self.set(m, x, n);
                        self.set(n, x ^ 1, m);
                    }
                }
            }
        }
    }

    /// Scan `w` at `a`, defining cosets when `fill`.
    fn scan(&mut self, a: u32, w: &[usize], fill: bool) {
        let r = w.len();
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0usize, r);
        loop {
            while i < r && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i == r {
                if f != a {
                    self.coincidence(f, a);
                }
                return;
            }
            while j > i && self.get(b, w[j - 1] ^ 1) != NONE {
                b = self.get(b, w[j - 1] ^ 1);
                j -= 1;
            }
            if j <= i {
                self.coincidence(f, b);
                return;
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return;
            }
            if !fill {
                return;
            }
            self.define(f, w[i]);
        }
    }

    fn lookahead(&mut self) {
        self.stats.lookaheads += 1;
        let relators = self.relators;
        for c in 0..self.rows() as u32 {
            for w in relators {
                if !self.alive(c) {
                    break;
                }
                self.scan(c, w, false);
            }
        }
    }

    /// Renumber live cosets in order; returns the new index of `keep`.
    fn compact(&mut self, keep: u32) -> u32 {
        let mut map = vec![NONE; self.rows()];
        let mut next = 0u32;
        for c in 0..self.rows() {
            if self.parent[c] == c as u32 {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..self.rows() {
            if map[c] != NONE {
                table.extend(self.table[c * self.ncols..(c + 1) * self.ncols].iter().map(|&d| {
                    if d == NONE {
                        NONE
                    } else {
                        map[d as usize]
                    }
                }));
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        // the first live coset at or after `keep`
        (keep as usize..map.len()).map(|k| map[k]).find(|&k| k != NONE).unwrap_or(next)
    }

    /// Make room for `need` definitions before working at `a`.
    fn ensure(&mut self, a: u32, need: usize) -> Result<u32> {
        if self.rows() + need <= self.budget {
            return Ok(a);
        }
        self.lookahead();
        let a = self.compact(a);
        if self.rows() + need > self.budget {
            return Err(Error::Budget { what: "cosets".into(), limit: self.budget });
        }
        Ok(a)
    }
}

/// Enumerate the cosets of the subgroup generated by `subgroup` in the group
/// with the given generators and relators. Overflow is reported in the
/// returned table's status, not as an error.
pub fn todd_coxeter(ngens: usize, relators: &[Word], subgroup: &[Word], budget: usize) -> Result<CosetTable> {
    for w in relators.iter().chain(subgroup) {
        if let Some(&x) = w.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > ngens) {
            return Err(Error::Parse(format!("letter {x} out of range for {ngens} generators")));
        }
    }
    let freely = |w: &Word| -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &x in w {
            let c = column(x);
            if out.last() == Some(&(c ^ 1)) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        out
    };
    let mut rels: Vec<Vec<usize>> = relators.iter().map(freely).filter(|w| !w.is_empty()).collect();
    rels.sort_by_key(Vec::len);
    let ncols = 2 * ngens;
    let mut e = Enumerator {
        ncols,
        relators: &rels,
        table: vec![NONE; ncols],
        parent: vec![0],
        budget: budget.max(1),
        queue: Vec::new(),
        stats: EnumStats { defined: 1, max_allocated: 1, lookaheads: 0 },
    };
    let overflow = |e: Enumerator| CosetTable {
        ngens,
        table: Vec::new(),
        rows: 0,
        status: TableStatus::Overflow,
        stats: e.stats,
    };
    for w in subgroup.iter().map(freely) {
        match e.ensure(0, w.len()) {
            Ok(_) => e.scan(0, &w, true),
            Err(_) => return Ok(overflow(e)),
        }
    }
    let maxlen = rels.iter().map(Vec::len).max().unwrap_or(0).max(ncols);
    let mut a = 0u32;
    while (a as usize) < e.rows() {
        if e.alive(a) {
            a = match e.ensure(a, maxlen) {
                Ok(a) => a,
                Err(_) => return Ok(overflow(e)),
            };
            for k in 0..rels.len() {
                if !e.alive(a) {
                    break;
                }
                if e.rows() + rels[k].len() > e.budget {
                    a = match e.ensure(a, rels[k].len()) {
                        Ok(a) => a,
                        Err(_) => return Ok(overflow(e)),
                    };
                    if !e.alive(a) {
                        break;
                    }
                }
                let w = &rels[k];
                e.scan(a, w, true);
            }
            if e.alive(a) {
                for x in 0..ncols {
                    if e.get(a, x) == NONE {
                        if e.rows() >= e.budget {
                            a = match e.ensure(a, 1) {
                                Ok(a) => a,
                                Err(_) => return Ok(overflow(e)),
                            };
                            if !e.alive(a) || e.get(a, x) != NONE {
                                continue;
                            }
                        }
                        e.define(a, x);
                    }
                }
            }
        }
        a += 1;
    }
    let rows = e.parent.iter().enumerate().filter(|&(c, &p)| p == c as u32).count();
    e.compact(0);
    Ok(CosetTable { ngens, table: e.table, rows, status: TableStatus::Complete, stats: e.stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(ngens: usize, rels: &[Word]) -> usize {
        let t = todd_coxeter(ngens, rels, &[], 100_000).unwrap();
        assert!(t.is_complete());
        t.len()
    }

    #[test]
    fn trivial_group() {
        assert_eq!(order(1, &[vec![1]]), 1);
    }

    #[test]
    fn cyclic_and_dihedral() {
        assert_eq!(order(1, &[vec![1; 7]]), 7);
        // <a, b | a^2, b^2, (ab)^5>
        assert_eq!(order(2, &[vec![1, 1], vec![2, 2], [1, 2].repeat(5)]), 10);
    }

    #[test]
    fn symmetric_group_s4() {
        // Coxeter presentation of S4
        let rels = vec![vec![1, 1], vec![2, 2], vec![3, 3], [1, 2].repeat(3), [2, 3].repeat(3), [1, 3].repeat(2)];
        assert_eq!(order(3, &rels), 24);
    }

    #[test]
    fn subgroup_index() {
        let rels = vec![vec![1, 1], vec![2, 2], vec![3, 3], [1, 2].repeat(3), [2, 3].repeat(3), [1, 3].repeat(2)];
        let t = todd_coxeter(3, &rels, &[vec![1], vec![2]], 1000).unwrap();
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn table_is_a_permutation_action() {
        let rels = vec![vec![1, 1, 1], vec![2, 2], [1, 2].repeat(2)];
        let t = todd_coxeter(2, &rels, &[], 1000).unwrap();
        assert_eq!(t.len(), 6);
        for c in 0..t.len() {
            for x in [1, -1, 2, -2] {
                assert_eq!(t.act(t.act(c, x), -x), c);
            }
            for r in &rels {
                assert_eq!(t.trace(c, r), c);
            }
        }
        let tree = t.spanning_tree();
        for c in 0..t.len() {
            assert_eq!(t.trace(0, &CosetTable::representative(&tree, c)), c);
        }
    }

    #[test]
    fn overflow_is_reported() {
        // the free group on one generator is infinite
        let t = todd_coxeter(1, &[], &[], 50).unwrap();
        assert_eq!(t.status, TableStatus::Overflow);
    }

    #[test]
    fn lookahead_recovers_space() {
        // tight budget forces lookahead and compaction on S4
        let rels = vec![vec![1, 1], vec![2, 2], vec![3, 3], [1, 2].repeat(3), [2, 3].repeat(3), [1, 3].repeat(2)];
        let t = todd_coxeter(3, &rels, &[], 40).unwrap();
        assert!(t.is_complete());
        assert_eq!(t.len(), 24);
    }
}
