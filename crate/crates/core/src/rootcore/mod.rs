//! Reduced root systems in the simple-root basis.
//!
//! Roots are integer coefficient vectors over the simple roots, numbered as
//! in Bourbaki. The inner product is recovered from the Cartan matrix and
//! its symmetrizer. All roots are kept in the canonical order: ascending
//! height, then lexicographic on the coefficient vector.

mod automorphism;
mod cartan;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use automorphism::{DiagramAutGroup, Perm};
pub use cartan::{cartan_matrix, Series};

/// Default rank cap for exhaustive campaigns.
pub const DEFAULT_MAX_RANK: usize = 8;

/// Integer coefficient vectors with the usual lattice operations.
#[macro_export]
macro_rules! int_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<i32>);

        impl $name {
            pub fn zero(rank: usize) -> Self {
                $name(vec![0; rank])
            }

            pub fn unit(rank: usize, i: usize) -> Self {
                let mut v = vec![0; rank];
                v[i] = 1;
                $name(v)
            }

            pub fn coeffs(&self) -> &[i32] {
                &self.0
            }

            pub fn height(&self) -> i32 {
                self.0.iter().sum()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            pub fn is_positive(&self) -> bool {
                !self.is_zero() && self.0.iter().all(|&c| c >= 0)
            }

            pub fn is_negative(&self) -> bool {
                !self.is_zero() && self.0.iter().all(|&c| c <= 0)
            }

            pub fn add(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn neg(&self) -> Self {
                $name(self.0.iter().map(|a| -a).collect())
            }

            pub fn scale(&self, k: i32) -> Self {
                $name(self.0.iter().map(|a| k * a).collect())
            }

            /// Canonical comparison key: height first, then coefficients.
            pub fn canonical_key(&self) -> (i32, &[i32]) {
                (self.height(), &self.0)
            }

            /// Whether `self <= other` coefficientwise.
            pub fn dominated_by(&self, other: &Self) -> bool {
                self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
            }
        }

        impl std::fmt::Debug for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "{:?}", self.0)
            }
        }
    };
}

int_vector!(
    /// A root written in the simple-root basis.
    Root
);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Self {
        Root::unit(rank, i)
    }
}

/// Sort roots in canonical order.
pub fn sort_canonical(roots: &mut [Root]) {
    roots.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
}

/// One irreducible component of a (possibly reducible) root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub series: Series,
    pub rank: usize,
    /// Index of the first simple root of this component.
    pub offset: usize,
}

/// A reduced root system together with its Cartan data.
#[derive(Clone, Debug)]
pub struct RootSystem {
    components: Vec<Component>,
    cartan: Vec<Vec<i32>>,
    /// Squared lengths of the simple roots, scaled so the shortest is 2.
    lengths: Vec<i32>,
    /// Symmetric Gram matrix of the simple roots in the same scale.
    gram: Vec<Vec<i32>>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    /// `sums[i * n + j]` is the index of `roots[i] + roots[j]`, or `NONE`.
    sums: Vec<u32>,
    negs: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// Serialized form of a root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub series: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i32>>,
    pub roots: Vec<Vec<i32>>,
}

impl RootSystem {
    /// Build an irreducible root system of the given type.
    pub fn build(series: Series, rank: usize) -> Result<Self> {
        Self::product(&[(series, rank)])
    }

    /// Build an irreducible system from a descriptor such as `"E8"` or `"C3"`.
    pub fn from_name(name: &str) -> Result<Self> {
        let (series, rank) = cartan::parse_name(name)?;
        Self::build(series, rank)
    }

    /// Build the orthogonal sum of several irreducible systems.
    pub fn product(parts: &[(Series, usize)]) -> Result<Self> {
        let mut components = Vec::new();
        let mut offset = 0;
        for &(series, rank) in parts {
            series.check_rank(rank)?;
            components.push(Component { series, rank, offset });
            offset += rank;
        }
        let mut cartan = vec![vec![0; offset]; offset];
        for c in &components {
            let block = cartan_matrix(c.series, c.rank)?;
            for i in 0..c.rank {
                for j in 0..c.rank {
                    cartan[c.offset + i][c.offset + j] = block[i][j];
                }
            }
        }
        Self::with_components(components, cartan)
    }

    /// Build from an explicit Cartan matrix, checking it is a valid
    /// (finite-type) Cartan matrix. The result carries no series labels.
    pub fn from_cartan(cartan: Vec<Vec<i32>>) -> Result<Self> {
        let n = cartan.len();
        if cartan.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..n {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(Error::InvalidCartan(format!("positive entry at ({i},{j})")));
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(Error::InvalidCartan(format!("asymmetric zero at ({i},{j})")));
                    }
                    if cartan[i][j] * cartan[j][i] > 3 {
                        return Err(Error::InvalidCartan(format!("bond ({i},{j}) is not of finite type")));
                    }
                }
            }
        }
        let components = cartan::identify_components(&cartan)?;
        Self::with_components(components, cartan)
    }

    fn with_components(components: Vec<Component>, cartan: Vec<Vec<i32>>) -> Result<Self> {
        let lengths = cartan::symmetrize(&cartan)?;
        let n = cartan.len();
        let gram: Vec<Vec<i32>> = (0..n)
            .map(|i| (0..n).map(|j| cartan[i][j] * lengths[j] / 2).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                }
            }
        }
        let positive = positive_roots(&cartan)?;
        let mut roots: Vec<Root> = positive.iter().map(Root::neg).collect();
        roots.extend(positive);
        sort_canonical(&mut roots);
        let index: HashMap<Root, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let m = roots.len();
        let mut sums = vec![NONE; m * m];
        for i in 0..m {
            for j in 0..m {
                if let Some(&k) = index.get(&roots[i].add(&roots[j])) {
                    sums[i * m + j] = k as u32;
                }
            }
        }
        let negs = roots.iter().map(|r| index[&r.neg()] as u32).collect();
        let sys = RootSystem { components, cartan, lengths, gram, roots, index, sums, negs };
        // Positive-definiteness shows up as a finite root count; cross-check
        // against the classification count when the series is known.
        for c in &sys.components {
            let expected = c.series.root_count(c.rank);
            let got = sys.roots.iter().filter(|r| sys.component_of(r) == Some(c.offset)).count();
            if got != expected {
                return Err(Error::InvalidCartan(format!(
                    "component {:?}{} has {got} roots, expected {expected}",
                    c.series, c.rank
                )));
            }
        }
        Ok(sys)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Squared lengths of simple roots (shortest = 2).
    pub fn simple_lengths(&self) -> &[i32] {
        &self.lengths
    }

    /// All roots in canonical order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    pub fn positive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.roots[i].is_positive())
    }

    pub fn simple_indices(&self) -> Vec<usize> {
        (0..self.rank()).map(|i| self.index[&Root::simple(self.rank(), i)]).collect()
    }

    /// Index of the root `-roots[i]`.
    pub fn negate_index(&self, i: usize) -> usize {
        self.negs[i] as usize
    }

    /// Index of `roots[i] + roots[j]` if that is a root.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.sums[i * self.roots.len() + j];
        (k != NONE).then_some(k as usize)
    }

    /// Index of `roots[i] - roots[j]` if that is a root.
    pub fn diff_index(&self, i: usize, j: usize) -> Option<usize> {
        self.sum_index(i, self.negate_index(j))
    }

    pub fn height(&self, r: &Root) -> i32 {
        r.height()
    }

    /// `a + b` if it is a root.
    pub fn root_sum(&self, a: &Root, b: &Root) -> Option<Root> {
        let s = a.add(b);
        self.contains(&s).then_some(s)
    }

    /// Symmetric inner product `(a, b)` in the scale where short roots have
    /// squared length 2.
    pub fn inner(&self, a: &Root, b: &Root) -> i32 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a.0[i] * b.0[j] * self.gram[i][j];
            }
        }
        s
    }

    pub fn norm2(&self, a: &Root) -> i32 {
        self.inner(a, a)
    }

    /// The Cartan pairing `<a, b^v> = 2 (a, b) / (b, b)`.
    pub fn pairing(&self, a: &Root, b: &Root) -> i32 {
        2 * self.inner(a, b) / self.norm2(b)
    }

    /// Reflection of `a` in the hyperplane orthogonal to `b`.
    pub fn reflect(&self, a: &Root, b: &Root) -> Root {
        a.sub(&b.scale(self.pairing(a, b)))
    }

    /// Coordinates of the coroot `a^v` in the basis of simple coroots.
    pub fn coroot_coeffs(&self, a: &Root) -> Vec<i32> {
        let na = self.norm2(a);
        a.0.iter()
            .zip(&self.lengths)
            .map(|(&c, &l)| {
                debug_assert_eq!((c * l) % na, 0);
                c * l / na
            })
            .collect()
    }

    /// Offset of the irreducible component that contains `r` (by support).
    pub fn component_of(&self, r: &Root) -> Option<usize> {
        self.components
            .iter()
            .find(|c| (c.offset..c.offset + c.rank).any(|i| r.0[i] != 0))
            .map(|c| c.offset)
    }

    /// Highest root of each irreducible component, in component order.
    pub fn highest_roots(&self) -> Vec<Root> {
        self.components
            .iter()
            .map(|c| {
                self.roots
                    .iter()
                    .filter(|r| self.component_of(r) == Some(c.offset))
                    .max_by_key(|r| r.height())
                    .cloned()
                    .expect("component has roots")
            })
            .collect()
    }

    /// The `b`-string through `a`: `(p, q)` with `a - p b, ..., a + q b` roots.
    pub fn string(&self, a: &Root, b: &Root) -> (i32, i32) {
        let mut p = 0;
        while self.contains(&a.sub(&b.scale(p + 1))) {
            p += 1;
        }
        let mut q = 0;
        while self.contains(&a.add(&b.scale(q + 1))) {
            q += 1;
        }
        (p, q)
    }

    /// Human readable descriptor, e.g. `"C3"` or `"A2xA1"`.
    pub fn name(&self) -> String {
        self.components
            .iter()
            .map(|c| format!("{}{}", c.series, c.rank))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn automorphisms(&self) -> DiagramAutGroup {
        DiagramAutGroup::of_cartan(&self.cartan)
    }

    /// Extended Dynkin diagram: simple roots followed by one lowest-root node
    /// per irreducible component.
    pub fn extended_diagram(&self) -> ExtendedDiagram {
        let mut nodes: Vec<Root> = (0..self.rank()).map(|i| Root::simple(self.rank(), i)).collect();
        nodes.extend(self.highest_roots().iter().map(Root::neg));
        let n = nodes.len();
        let mut bonds = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    bonds[i][j] = self.pairing(&nodes[i], &nodes[j]) * self.pairing(&nodes[j], &nodes[i]);
                }
            }
        }
        ExtendedDiagram { nodes, bonds }
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            series: self.name(),
            rank: self.rank(),
            cartan: self.cartan.clone(),
            roots: self.roots.iter().map(|r| r.0.clone()).collect(),
        }
    }

    /// Rebuild from the serialized form, validating the Cartan matrix and
    /// checking that the stored roots match the recomputed ones.
    pub fn from_json(j: &RootSystemJson) -> Result<Self> {
        if j.cartan.len() != j.rank {
            return Err(Error::InvalidCartan("rank does not match Cartan matrix".into()));
        }
        let sys = Self::from_cartan(j.cartan.clone())?;
        let stored: Vec<Root> = j.roots.iter().map(|r| Root(r.clone())).collect();
        if !stored.is_empty() && stored != sys.roots {
            return Err(Error::InvalidCartan("stored roots disagree with the Cartan matrix".into()));
        }
        Ok(sys)
    }
}

/// Adjacency data of the extended Dynkin diagram. `bonds[i][j]` is the
/// product of the two Cartan pairings, i.e. the number of edges (4 for the
/// affine `A1` double bond).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedDiagram {
    pub nodes: Vec<Root>,
    pub bonds: Vec<Vec<i32>>,
}

impl ExtendedDiagram {
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.bonds[i][j] != 0
    }

    pub fn degree(&self, i: usize) -> usize {
        (0..self.nodes.len()).filter(|&j| self.adjacent(i, j)).count()
    }

    pub fn edge_count(&self) -> usize {
        let n = self.nodes.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.adjacent(i, j)).count()
    }
}

/// Positive roots by increasing height, using root strings through simple
/// roots: for a positive root `a` and simple `b`, `a + b` is a root iff
/// `p - <a, b^v> > 0` where `p` is the length of the downward `b`-string.
fn positive_roots(cartan: &[Vec<i32>]) -> Result<Vec<Root>> {
    let n = cartan.len();
    let mut all: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut known: std::collections::HashSet<Root> = all.iter().cloned().collect();
    let mut layer = all.clone();
    let pairing = |a: &Root, i: usize| -> i32 { (0..n).map(|j| a.0[j] * cartan[j][i]).sum() };
    while !layer.is_empty() {
        let mut next = Vec::new();
        for a in &layer {
            for i in 0..n {
                let b = Root::simple(n, i);
                if *a == b {
                    continue;
                }
                let mut p = 0;
                while known.contains(&a.sub(&b.scale(p + 1))) {
                    p += 1;
                }
                let q = p - pairing(a, i);
                if q > 0 {
                    let s = a.add(&b);
                    if known.insert(s.clone()) {
                        next.push(s);
                    }
                }
            }
        }
        if all.len() + next.len() > 1000 {
            return Err(Error::InvalidCartan("Cartan matrix is not of finite type".into()));
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(name: &str) -> RootSystem {
        RootSystem::from_name(name).unwrap()
    }

    #[test]
    fn small_counts() {
        let a2 = sys("A2");
        assert_eq!(a2.len(), 6);
        assert_eq!(a2.positive_indices().count(), 3);
        let g2 = sys("G2");
        assert_eq!(g2.len(), 12);
        assert_eq!(g2.highest_roots()[0].height(), 5);
        let a1 = sys("A1");
        assert_eq!(a1.roots(), &[Root(vec![-1]), Root(vec![1])]);
    }

    #[test]
    fn heights() {
        let a2 = sys("A2");
        assert_eq!(a2.height(&Root(vec![1, 0])), 1);
        assert_eq!(a2.height(&Root(vec![1, 1])), 2);
        assert_eq!(sys("E8").highest_roots()[0].height(), 29);
        assert_eq!(sys("E8").highest_roots()[0].0, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(sys("F4").highest_roots()[0].0, vec![2, 3, 4, 2]);
        assert_eq!(sys("G2").highest_roots()[0].0, vec![3, 2]);
        assert_eq!(sys("B3").highest_roots()[0].0, vec![1, 2, 2]);
        assert_eq!(sys("C3").highest_roots()[0].0, vec![2, 2, 1]);
    }

    #[test]
    fn root_sums() {
        let a2 = sys("A2");
        let a1 = Root(vec![1, 0]);
        let a2r = Root(vec![0, 1]);
        assert_eq!(a2.root_sum(&a1, &a2r), Some(Root(vec![1, 1])));
        assert_eq!(a2.root_sum(&a1, &a1), None);
        assert_eq!(a2.root_sum(&a1, &a1.neg()), None);
    }

    #[test]
    fn bourbaki_lengths() {
        // B_n: last simple root short; C_n: last simple root long.
        assert_eq!(sys("B3").simple_lengths(), &[4, 4, 2]);
        assert_eq!(sys("C3").simple_lengths(), &[2, 2, 4]);
        assert_eq!(sys("F4").simple_lengths(), &[4, 4, 2, 2]);
        assert_eq!(sys("G2").simple_lengths(), &[2, 6]);
    }

    #[test]
    fn extended_diagrams() {
        let a2 = sys("A2").extended_diagram();
        assert_eq!(a2.nodes.len(), 3);
        assert_eq!(a2.edge_count(), 3);
        assert!((0..3).all(|i| a2.degree(i) == 2));
        let a1 = sys("A1").extended_diagram();
        assert_eq!(a1.bonds[0][1], 4);
        let g2 = sys("G2").extended_diagram();
        assert_eq!(g2.edge_count(), 2);
        // lowest-root node hangs off the long simple root a2
        assert!(g2.adjacent(2, 1) && !g2.adjacent(2, 0));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let c3 = sys("C3");
        let j = c3.to_json();
        let back = RootSystem::from_json(&j).unwrap();
        assert_eq!(back.roots(), c3.roots());
        let mut bad = j.clone();
        bad.cartan[0][1] = 1;
        assert!(RootSystem::from_json(&bad).is_err());
        let mut affine = sys("A2").to_json();
        affine.cartan = vec![vec![2, -2], vec![-2, 2]];
        affine.roots.clear();
        assert!(RootSystem::from_json(&affine).is_err());
    }

    #[test]
    fn unsupported() {
        assert!(RootSystem::build(Series::E, 5).is_err());
        assert!(RootSystem::build(Series::D, 3).is_err());
        assert!(RootSystem::from_name("Q3").is_err());
    }
}
