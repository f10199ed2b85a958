//! Relative root systems `Φ_{J,Γ}`: the image of a root system under the
//! projection that kills the simple roots outside `J` and identifies simple
//! roots in the same `Γ`-orbit.
//!
//! The quotient lattice is represented directly: one coordinate per
//! `Γ`-orbit of `J`, and the projection sums the coefficients of each orbit.

pub mod chains;
pub mod lattice;
pub mod verify;

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int_vector;
use crate::rootcore::{DiagramAutGroup, Perm, Root, RootSystem};

int_vector!(
    /// A relative root, written over the simple relative roots.
    RelativeRoot
);

/// The data `(Φ, J, Γ)` defining a projection.
#[derive(Clone, Debug)]
pub struct ProjectionSpec {
    base: Arc<RootSystem>,
    j: Vec<usize>,
    gamma: DiagramAutGroup,
    orbits: Vec<Vec<usize>>,
    coord: Vec<Option<usize>>,
}

/// Plain description of a case, with 1-based simple-root numbering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub series: String,
    pub rank: usize,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "Gamma")]
    pub gamma: Vec<Vec<usize>>,
}

impl ProjectionSpec {
    /// `j` lists 0-based simple-root indices; `gamma` must consist of
    /// diagram automorphisms and leave `j` invariant.
    pub fn new(base: Arc<RootSystem>, j: &[usize], gamma: DiagramAutGroup) -> Result<Self> {
        let n = base.rank();
        let mut j: Vec<usize> = j.to_vec();
        j.sort_unstable();
        j.dedup();
        if j.iter().any(|&i| i >= n) {
            return Err(Error::InvalidProjection(format!("J = {j:?} out of range for rank {n}")));
        }
        if gamma.rank() != n {
            return Err(Error::InvalidProjection("Γ acts on a different rank".into()));
        }
        let aut = base.automorphisms();
        if !gamma.is_subgroup_of(&aut) {
            return Err(Error::InvalidProjection("Γ is not a group of diagram automorphisms".into()));
        }
        if !gamma.preserves(&j) {
            return Err(Error::InvalidProjection(format!("J = {j:?} is not Γ-invariant")));
        }
        let orbits: Vec<Vec<usize>> =
            gamma.orbits().into_iter().filter(|o| j.contains(&o[0])).collect();
        let mut coord = vec![None; n];
        for (k, o) in orbits.iter().enumerate() {
            for &i in o {
                coord[i] = Some(k);
            }
        }
        Ok(ProjectionSpec { base, j, gamma, orbits, coord })
    }

    /// Split case `J = Π`, `Γ = 1`.
    pub fn split(base: Arc<RootSystem>) -> Self {
        let n = base.rank();
        let all: Vec<usize> = (0..n).collect();
        Self::new(base, &all, DiagramAutGroup::trivial(n)).expect("split projection is valid")
    }

    /// `Γ = 1` with the given `J`.
    pub fn inner(base: Arc<RootSystem>, j: &[usize]) -> Result<Self> {
        let n = base.rank();
        Self::new(base, j, DiagramAutGroup::trivial(n))
    }

    pub fn base(&self) -> &RootSystem {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<RootSystem> {
        &self.base
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn gamma(&self) -> &DiagramAutGroup {
        &self.gamma
    }

    pub fn gamma_trivial(&self) -> bool {
        self.gamma.is_trivial()
    }

    /// Γ-orbits of `J`, one per simple relative root.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Rank of the quotient lattice.
    pub fn relative_rank(&self) -> usize {
        self.orbits.len()
    }

    pub fn project(&self, a: &Root) -> RelativeRoot {
        let mut v = vec![0; self.orbits.len()];
        for (i, &c) in a.0.iter().enumerate() {
            if let Some(k) = self.coord[i] {
                v[k] += c;
            }
        }
        RelativeRoot(v)
    }

    pub fn descriptor(&self) -> CaseDescriptor {
        CaseDescriptor {
            series: self.base.name(),
            rank: self.base.rank(),
            j: self.j.iter().map(|i| i + 1).collect(),
            gamma: self
                .gamma
                .elements()
                .iter()
                .map(|p: &Perm| p.iter().map(|i| i + 1).collect())
                .collect(),
        }
    }
}

/// Relative roots with their fibers, multiples and canonical order.
#[derive(Debug)]
pub struct RelativeRootSystem {
    spec: ProjectionSpec,
    elements: Vec<RelativeRoot>,
    index: HashMap<RelativeRoot, usize>,
    fibers: Vec<Vec<usize>>,
    projection: Vec<Option<usize>>,
    negs: Vec<usize>,
    sums: Vec<Option<usize>>,
    simple: Vec<usize>,
    bracket_cache: Mutex<HashMap<(usize, usize), Vec<usize>>>,
}

impl Clone for RelativeRootSystem {
    fn clone(&self) -> Self {
        Self::assemble(self.spec.clone(), self.elements.clone(), self.fibers.clone())
    }
}

impl RelativeRootSystem {
    pub fn new(spec: ProjectionSpec) -> Self {
        let base = spec.base.clone();
        let mut buckets: HashMap<RelativeRoot, Vec<usize>> = HashMap::new();
        for (i, r) in base.roots().iter().enumerate() {
            let p = spec.project(r);
            if !p.is_zero() {
                buckets.entry(p).or_default().push(i);
            }
        }
        let mut elements: Vec<RelativeRoot> = buckets.keys().cloned().collect();
        elements.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        let fibers = elements.iter().map(|e| buckets[e].clone()).collect();
        Self::assemble(spec, elements, fibers)
    }

    /// Rebuild from explicitly supplied fibers (indexed like the canonical
    /// element list). Used to inject faults in tests of the verifier.
    pub fn from_parts(spec: ProjectionSpec, fibers: Vec<Vec<usize>>) -> Self {
        let fresh = Self::new(spec.clone());
        assert_eq!(fresh.elements.len(), fibers.len(), "fiber list must match the element list");
        Self::assemble(spec, fresh.elements, fibers)
    }

    fn assemble(spec: ProjectionSpec, elements: Vec<RelativeRoot>, fibers: Vec<Vec<usize>>) -> Self {
        let index: HashMap<RelativeRoot, usize> =
            elements.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut projection = vec![None; spec.base.len()];
        for (k, f) in fibers.iter().enumerate() {
            for &a in f {
                projection[a] = Some(k);
            }
        }
        let n = elements.len();
        let negs = elements.iter().map(|e| index.get(&e.neg()).copied().unwrap_or(usize::MAX)).collect();
        let mut sums = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                sums[i * n + j] = index.get(&elements[i].add(&elements[j])).copied();
            }
        }
        let r = spec.relative_rank();
        let simple = (0..r).filter_map(|k| index.get(&RelativeRoot::unit(r, k)).copied()).collect();
        RelativeRootSystem {
            spec,
            elements,
            index,
            fibers,
            projection,
            negs,
            sums,
            simple,
            bracket_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &ProjectionSpec {
        &self.spec
    }

    pub fn base(&self) -> &RootSystem {
        self.spec.base()
    }

    pub fn rank(&self) -> usize {
        self.spec.relative_rank()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[RelativeRoot] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &RelativeRoot {
        &self.elements[i]
    }

    pub fn index_of(&self, r: &RelativeRoot) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn contains(&self, r: &RelativeRoot) -> bool {
        self.index.contains_key(r)
    }

    /// Absolute roots (indices into the base system) over a relative root.
    pub fn fiber(&self, i: usize) -> &[usize] {
        &self.fibers[i]
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    /// Relative root index of an absolute root, `None` when it projects to 0.
    pub fn project_index(&self, abs: usize) -> Option<usize> {
        self.projection[abs]
    }

    pub fn project(&self, a: &Root) -> Option<RelativeRoot> {
        let p = self.spec.project(a);
        (!p.is_zero()).then_some(p)
    }

    pub fn neg_index(&self, i: usize) -> usize {
        self.negs[i]
    }

    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        self.sums[i * self.elements.len() + j]
    }

    /// Indices of the simple relative roots, in coordinate order.
    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn is_simple(&self, i: usize) -> bool {
        self.simple.contains(&i)
    }

    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i].is_positive()).collect()
    }

    pub fn height(&self, i: usize) -> i32 {
        self.elements[i].height()
    }

    /// Largest `m` with `m α` a relative root.
    pub fn multiple(&self, i: usize) -> usize {
        let a = &self.elements[i];
        let mut m = 1;
        while self.contains(&a.scale(m as i32 + 1)) {
            m += 1;
        }
        m
    }

    /// Largest multiple over all relative roots.
    pub fn max_multiple(&self) -> usize {
        (0..self.len()).map(|i| self.multiple(i)).max().unwrap_or(0)
    }

    /// Whether Γ permutes the irreducible components of the base transitively.
    pub fn is_irreducible(&self) -> bool {
        let comps = self.base().components();
        if comps.len() <= 1 {
            return true;
        }
        let first = comps[0].offset;
        comps.iter().all(|c| {
            self.spec.gamma.elements().iter().any(|p| p[first] >= c.offset && p[first] < c.offset + c.rank)
        })
    }

    /// Relative roots that are maximal: no simple relative root can be added.
    pub fn maximal_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.simple.iter().all(|&s| self.sum_index(i, s).is_none()))
            .collect()
    }

    /// The relative root of maximal height (for an irreducible system).
    pub fn highest(&self) -> usize {
        (0..self.len()).max_by_key(|&i| (self.height(i), std::cmp::Reverse(i))).expect("nonempty system")
    }

    /// `[S1, S2] = {iα + jβ : α ∈ S1, β ∈ S2, i, j > 0} ∩ Φ_{J,Γ}`.
    pub fn bracket(&self, s1: &[usize], s2: &[usize]) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &a in s1 {
            for &b in s2 {
                out.extend(self.pair_bracket(a, b));
            }
        }
        out
    }

    /// `[{α}, {β}]` as sorted indices, memoised.
    pub fn pair_bracket(&self, a: usize, b: usize) -> Vec<usize> {
        if let Some(v) = self.bracket_cache.lock().unwrap().get(&(a, b)) {
            return v.clone();
        }
        let (va, vb) = (&self.elements[a].0, &self.elements[b].0);
        let v: Vec<usize> = (0..self.len())
            .filter(|&t| lattice::positive_combination(&self.elements[t].0, va, vb))
            .collect();
        self.bracket_cache.lock().unwrap().insert((a, b), v.clone());
        v
    }

    /// Whether `i α + j β = 0` for some `i, j > 0`.
    pub fn opposite(&self, a: usize, b: usize) -> bool {
        lattice::opposite_multiples(&self.elements[a].0, &self.elements[b].0)
    }

    pub fn independent(&self, a: usize, b: usize) -> bool {
        !lattice::dependent(&self.elements[a].0, &self.elements[b].0)
    }

    /// Π-maximal and Π-minimal roots of `fiber(α)` restricted to the base
    /// component with the given offset (all components when `None`).
    pub fn fiber_extremes_all(&self, alpha: usize, component: Option<usize>) -> (Vec<usize>, Vec<usize>) {
        let base = self.base();
        let set: BTreeSet<usize> = self.fibers[alpha]
            .iter()
            .copied()
            .filter(|&a| component.is_none() || base.component_of(base.root(a)) == component)
            .collect();
        let simple = base.simple_indices();
        let maximal = set
            .iter()
            .copied()
            .filter(|&a| simple.iter().all(|&s| base.sum_index(a, s).map_or(true, |k| !set.contains(&k))))
            .collect();
        let minimal = set
            .iter()
            .copied()
            .filter(|&a| simple.iter().all(|&s| base.diff_index(a, s).map_or(true, |k| !set.contains(&k))))
            .collect();
        (maximal, minimal)
    }

    /// The unique Π-maximal and Π-minimal roots of a fiber within one
    /// component. Requires `Γ = 1`.
    pub fn fiber_extremes(&self, alpha: usize, component: usize) -> Result<(usize, usize)> {
        if !self.spec.gamma_trivial() {
            return Err(Error::Precondition("fiber extremes are defined for Γ = 1".into()));
        }
        let (max, min) = self.fiber_extremes_all(alpha, Some(component));
        match (max.as_slice(), min.as_slice()) {
            ([], _) | (_, []) => Err(Error::Precondition("fiber is empty in this component".into())),
            ([a], [b]) => Ok((*a, *b)),
            _ => Err(Error::Precondition(format!(
                "fiber extremes are not unique: maximal {max:?}, minimal {min:?}"
            ))),
        }
    }

    /// `(m, n)` with `(α + Zβ) ∩ Φ = {α + iβ : -m <= i <= n}` for a simple
    /// relative root `β` independent of `α`. Errors if the string has a gap.
    pub fn root_interval(&self, alpha: usize, beta: usize) -> Result<(i32, i32)> {
        if !self.is_simple(beta) || !self.independent(alpha, beta) {
            return Err(Error::Precondition("β must be simple and independent of α".into()));
        }
        let a = &self.elements[alpha];
        let b = &self.elements[beta];
        let present: Vec<i32> = self
            .elements
            .iter()
            .filter_map(|t| lattice::coordinates(&t.0, &a.0, &b.0))
            .filter(|&(i, _)| i == 1)
            .map(|(_, j)| j as i32)
            .collect();
        let lo = *present.iter().min().unwrap();
        let hi = *present.iter().max().unwrap();
        if present.len() as i32 != hi - lo + 1 {
            return Err(Error::Precondition(format!(
                "string of {:?} through {:?} has a gap: {present:?}",
                b, a
            )));
        }
        Ok((-lo, hi))
    }

    /// Base-component offsets meeting the fiber of each relative root.
    pub fn fiber_components(&self, alpha: usize) -> BTreeSet<usize> {
        let base = self.base();
        self.fibers[alpha].iter().filter_map(|&a| base.component_of(base.root(a))).collect()
    }

    pub fn descriptor(&self) -> CaseDescriptor {
        self.spec.descriptor()
    }
}

/// Every `(J, Γ)` for a base system: all subgroups of the diagram
/// automorphism group and all Γ-invariant subsets `J`.
pub fn all_projections(base: &Arc<RootSystem>) -> Vec<ProjectionSpec> {
    let n = base.rank();
    let mut out = Vec::new();
    for gamma in base.automorphisms().subgroups() {
        for mask in 1u32..(1 << n) {
            let j: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if gamma.preserves(&j) {
                out.push(ProjectionSpec::new(base.clone(), &j, gamma.clone()).expect("invariant J"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(name: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::from_name(name).unwrap())
    }

    fn rel(v: &[i32]) -> RelativeRoot {
        RelativeRoot(v.to_vec())
    }

    fn swap_a2() -> (Arc<RootSystem>, ProjectionSpec) {
        let b = base("A2");
        let g = b.automorphisms();
        let spec = ProjectionSpec::new(b.clone(), &[0, 1], g).unwrap();
        (b, spec)
    }

    #[test]
    fn projection_examples() {
        let a3 = base("A3");
        let spec = ProjectionSpec::inner(a3.clone(), &[0, 2]).unwrap();
        assert!(spec.project(&Root(vec![0, 1, 0])).is_zero());
        assert_eq!(spec.project(&Root(vec![1, 1, 0])), spec.project(&Root(vec![1, 0, 0])));
        let (_, swap) = swap_a2();
        assert_eq!(swap.project(&Root(vec![1, 1])), swap.project(&Root(vec![1, 0])).scale(2));
    }

    #[test]
    fn relative_systems() {
        let split = RelativeRootSystem::new(ProjectionSpec::split(base("B3")));
        assert_eq!(split.len(), 18);
        assert!(split.fibers().iter().all(|f| f.len() == 1));
        assert_eq!(split.max_multiple(), 1);

        let (_, swap) = swap_a2();
        let bc1 = RelativeRootSystem::new(swap);
        assert_eq!(bc1.elements(), &[rel(&[-2]), rel(&[-1]), rel(&[1]), rel(&[2])]);
        assert_eq!(bc1.multiple(bc1.index_of(&rel(&[1])).unwrap()), 2);

        let a3 = RelativeRootSystem::new(ProjectionSpec::inner(base("A3"), &[0, 2]).unwrap());
        assert_eq!(a3.len(), 6);
        assert_eq!(a3.rank(), 2);
        let a1 = a3.index_of(&rel(&[1, 0])).unwrap();
        assert_eq!(a3.fiber(a1).len(), 2);
    }

    #[test]
    fn brackets() {
        let a3 = RelativeRootSystem::new(ProjectionSpec::inner(base("A3"), &[0, 2]).unwrap());
        let x = a3.index_of(&rel(&[1, 0])).unwrap();
        let y = a3.index_of(&rel(&[0, 1])).unwrap();
        let s = a3.bracket(&[x], &[y]);
        assert_eq!(s.into_iter().map(|i| a3.element(i).clone()).collect::<Vec<_>>(), vec![rel(&[1, 1])]);

        let a2 = RelativeRootSystem::new(ProjectionSpec::split(base("A2")));
        let a = a2.index_of(&rel(&[1, 0])).unwrap();
        assert!(a2.bracket(&[a], &[a]).is_empty());

        let (_, swap) = swap_a2();
        let bc1 = RelativeRootSystem::new(swap);
        let one = bc1.index_of(&rel(&[1])).unwrap();
        let got: Vec<_> = bc1.bracket(&[one], &[one]).into_iter().map(|i| bc1.element(i).clone()).collect();
        assert_eq!(got, vec![rel(&[2])]);
    }

    #[test]
    fn extremes() {
        let split = RelativeRootSystem::new(ProjectionSpec::split(base("A2")));
        for i in 0..split.len() {
            let (mx, mn) = split.fiber_extremes(i, 0).unwrap();
            assert_eq!(mx, mn);
        }
        let a3 = RelativeRootSystem::new(ProjectionSpec::inner(base("A3"), &[0, 2]).unwrap());
        let x = a3.index_of(&rel(&[1, 0])).unwrap();
        let (mx, mn) = a3.fiber_extremes(x, 0).unwrap();
        assert_eq!(a3.base().root(mx), &Root(vec![1, 1, 0]));
        assert_eq!(a3.base().root(mn), &Root(vec![1, 0, 0]));

        let c3 = RelativeRootSystem::new(ProjectionSpec::inner(base("C3"), &[2]).unwrap());
        let s = c3.index_of(&rel(&[1])).unwrap();
        let (mx, mn) = c3.fiber_extremes(s, 0).unwrap();
        assert_ne!(mx, mn);
        assert_eq!(c3.base().root(mn), &Root(vec![0, 0, 1]));
        assert_eq!(c3.base().root(mx), &Root(vec![2, 2, 1]));
    }

    #[test]
    fn intervals() {
        let a2 = RelativeRootSystem::new(ProjectionSpec::split(base("A2")));
        let a1 = a2.index_of(&rel(&[1, 0])).unwrap();
        let a2s = a2.index_of(&rel(&[0, 1])).unwrap();
        let hi = a2.index_of(&rel(&[1, 1])).unwrap();
        assert_eq!(a2.root_interval(a1, a2s).unwrap(), (0, 1));
        assert_eq!(a2.root_interval(hi, a2s).unwrap(), (1, 0));
        let g2 = RelativeRootSystem::new(ProjectionSpec::split(base("G2")));
        let long = g2.index_of(&rel(&[0, 1])).unwrap();
        let short = g2.index_of(&rel(&[1, 0])).unwrap();
        assert_eq!(g2.root_interval(long, short).unwrap(), (0, 3));
    }

    #[test]
    fn invalid_specs() {
        let a3 = base("A3");
        let g = a3.automorphisms();
        assert!(ProjectionSpec::new(a3.clone(), &[0, 1], g).is_err());
        assert!(ProjectionSpec::inner(a3, &[5]).is_err());
    }

    #[test]
    fn projection_counts() {
        // D4: subgroups {1, three Z2, Z3, S3}; count Γ-invariant nonempty J
        let d4 = base("D4");
        let all = all_projections(&d4);
        assert!(all.iter().all(|p| p.gamma().preserves(p.j())));
        assert_eq!(all.iter().filter(|p| p.gamma_trivial()).count(), 15);
    }
}
