//! Relative root elements `X_α(v)` for split inner forms and the polynomial
//! maps `q^i_α`, `N_{αβij}` of the sum relation
//! `X_α(v) X_α(w) = X_α(v+w) prod_{i>1} X_{iα}(q^i_α(v,w))` and the
//! generalized commutator formula
//! `[X_α(u), X_β(v)] = prod_{i,j>0} X_{iα+jβ}(N_{αβij}(u,v))`.
//!
//! `V_α` is free on the fiber `π^{-1}(α)` and `X_α(v)` is the product of
//! `x_a(v_a)` over the fiber in canonical order. Maps are computed by
//! factorizing symbolic products over `Z[x_0, x_1, ...]`.

pub mod chain;
pub mod identities;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Matrix, Poly, PolyRing, Ring};
use crate::chevalley::{factorize_blocks, RepKind, Representation, StructureConstants};
use crate::error::{Error, Result};
use crate::relroots::{lattice, ProjectionSpec, RelativeRootSystem};
use crate::rootcore::{RootSystem, Series};

pub use chain::{
    check_abe, check_f_surjective, constants_invertible, lowest_sums, n_chain, verify_chain_comm, AbeReport,
    ChainComm, ChainCommReport, FReport, TupleMode,
};
pub use identities::{rep_independence, verify_identities, IdentityReport};

/// A computed coefficient map. Arguments are the concatenated coordinates
/// of the sources: variable `k` is coordinate `k` of that concatenation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelRootMap {
    /// Source relative roots, `[α]` for `q`, `[α, β]` for `N`.
    pub source: Vec<usize>,
    /// `[i]` or `[i, j]`.
    pub degree: Vec<u32>,
    pub target: usize,
    /// One polynomial per fiber root of the target.
    pub components: Vec<Poly>,
}

impl RelRootMap {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn eval<R: Ring>(&self, ring: &R, args: &[&[R::Elem]]) -> Vec<R::Elem> {
        let flat: Vec<&R::Elem> = args.iter().flat_map(|a| a.iter()).collect();
        self.components.iter().map(|p| p.eval(ring, &|v| flat[v as usize].clone())).collect()
    }
}

type MapCache = Mutex<HashMap<(usize, usize), Arc<Vec<RelRootMap>>>>;

/// A split inner relative root system together with a representation of
/// the base group in which relative root elements are realized.
pub struct RelCase {
    rel: Arc<RelativeRootSystem>,
    rep: Representation,
    q_cache: MapCache,
    n_cache: MapCache,
}

impl RelCase {
    pub fn new(spec: ProjectionSpec, kind: RepKind) -> Result<Self> {
        Self::with_rep(spec, |c| Representation::build(c, kind))
    }

    /// The classical representation when there is one, else the adjoint.
    pub fn preferred(spec: ProjectionSpec) -> Result<Self> {
        Self::with_rep(spec, |c| match Representation::classical(c.clone()) {
            Err(Error::NoClassicalRep(_)) => Ok(Representation::adjoint(c)),
            r => r,
        })
    }

    fn with_rep(
        spec: ProjectionSpec,
        make: impl FnOnce(Arc<StructureConstants>) -> Result<Representation>,
    ) -> Result<Self> {
        if !spec.gamma_trivial() {
            return Err(Error::Precondition("relative root elements are realized for Γ = 1 only".into()));
        }
        let rep = make(Arc::new(StructureConstants::new(spec.base_arc().clone())))?;
        Ok(RelCase {
            rel: Arc::new(RelativeRootSystem::new(spec)),
            rep,
            q_cache: Mutex::new(HashMap::new()),
            n_cache: Mutex::new(HashMap::new()),
        })
    }

    /// `series`, `rank`, 1-based `J`; `None` for the split case.
    pub fn build(series: Series, rank: usize, j: Option<&[usize]>, kind: Option<RepKind>) -> Result<Self> {
        let base = Arc::new(RootSystem::build(series, rank)?);
        let spec = match j {
            None => ProjectionSpec::split(base),
            Some(j) => {
                if j.iter().any(|&i| i == 0) {
                    return Err(Error::InvalidProjection("J uses 1-based numbering".into()));
                }
                let j0: Vec<usize> = j.iter().map(|i| i - 1).collect();
                ProjectionSpec::inner(base, &j0)?
            }
        };
        match kind {
            Some(k) => Self::new(spec, k),
            None => Self::preferred(spec),
        }
    }

    /// The five split inner cases the calculus is exercised on.
    pub fn roster() -> Result<Vec<RelCase>> {
        Ok(vec![
            Self::build(Series::A, 2, None, None)?,
            Self::build(Series::A, 3, Some(&[1, 3]), None)?,
            Self::build(Series::C, 2, Some(&[1]), None)?,
            Self::build(Series::C, 2, None, None)?,
            Self::build(Series::C, 3, Some(&[1, 2]), None)?,
        ])
    }

    /// `A3/{a1,a3}`, or `A2 split` when `J = Π`.
    pub fn name(&self) -> String {
        let base = self.rel.base();
        let j = self.rel.spec().j();
        if j.len() == base.rank() {
            return format!("{} split", base.name());
        }
        let names: Vec<String> = j.iter().map(|i| format!("a{}", i + 1)).collect();
        format!("{}/{{{}}}", base.name(), names.join(","))
    }

    pub fn system(&self) -> &RelativeRootSystem {
        &self.rel
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    /// Rank of `V_α`.
    pub fn dim(&self, alpha: usize) -> usize {
        self.rel.fiber(alpha).len()
    }

    /// `X_α(v)`.
    pub fn element<R: Ring>(&self, ring: &R, alpha: usize, v: &[R::Elem]) -> Matrix<R::Elem> {
        let fiber = self.rel.fiber(alpha);
        assert_eq!(fiber.len(), v.len(), "coordinate count must match the fiber");
        let mut m = Matrix::identity(ring, self.rep.dim());
        for (&a, t) in fiber.iter().zip(v) {
            if !ring.is_zero(t) {
                m = m.mul(ring, &self.rep.root_element(ring, a, t));
            }
        }
        m
    }

    /// `X_α(v)^{-1}`, the reversed product of `x_a(-v_a)`.
    pub fn element_inverse<R: Ring>(&self, ring: &R, alpha: usize, v: &[R::Elem]) -> Matrix<R::Elem> {
        let fiber = self.rel.fiber(alpha);
        let mut m = Matrix::identity(ring, self.rep.dim());
        for (&a, t) in fiber.iter().zip(v).rev() {
            if !ring.is_zero(t) {
                m = m.mul(ring, &self.rep.root_element(ring, a, &ring.neg(t)));
            }
        }
        m
    }

    /// Ordered product of `X_α(v)` over `(α, v)`.
    pub fn product<R: Ring>(&self, ring: &R, factors: &[(usize, Vec<R::Elem>)]) -> Matrix<R::Elem> {
        let mut m = Matrix::identity(ring, self.rep.dim());
        for (alpha, v) in factors {
            m = m.mul(ring, &self.element(ring, *alpha, v));
        }
        m
    }

    /// Coordinates `v_α` with `m = prod X_α(v_α)`, the product running over
    /// the blocks in order. Blocks must be levels of a linear functional
    /// positive on all their roots, in increasing order.
    pub fn factorize<R: Ring>(
        &self,
        ring: &R,
        m: &Matrix<R::Elem>,
        blocks: &[Vec<usize>],
    ) -> Result<Vec<(usize, Vec<R::Elem>)>> {
        let abs: Vec<Vec<usize>> =
            blocks.iter().map(|b| b.iter().flat_map(|&r| self.rel.fiber(r).iter().copied()).collect()).collect();
        let coords = factorize_blocks(&self.rep, ring, m, &abs)?;
        let mut out = Vec::new();
        for (block, cs) in blocks.iter().zip(coords) {
            let mut it = cs.into_iter();
            for &r in block {
                out.push((r, it.by_ref().take(self.dim(r)).collect()));
            }
        }
        Ok(out)
    }

    /// `q^i_α` for every `i >= 2` with `iα` a relative root, in increasing `i`.
    pub fn q_maps(&self, alpha: usize) -> Result<Arc<Vec<RelRootMap>>> {
        if let Some(m) = self.q_cache.lock().unwrap().get(&(alpha, alpha)) {
            return Ok(m.clone());
        }
        let maps = Arc::new(self.compute_q(alpha)?);
        self.q_cache.lock().unwrap().insert((alpha, alpha), maps.clone());
        Ok(maps)
    }

    fn compute_q(&self, alpha: usize) -> Result<Vec<RelRootMap>> {
        let d = self.dim(alpha);
        let v = vars(0, d);
        let w = vars(d, d);
        let vw: Vec<Poly> = v.iter().zip(&w).map(|(a, b)| a.add(b)).collect();
        let m = self
            .element_inverse(&PolyRing, alpha, &vw)
            .mul(&PolyRing, &self.element(&PolyRing, alpha, &v))
            .mul(&PolyRing, &self.element(&PolyRing, alpha, &w));
        let e = self.rel.element(alpha);
        let multiples: Vec<usize> = (1..)
            .map_while(|i| self.rel.index_of(&e.scale(i)))
            .collect();
        let blocks: Vec<Vec<usize>> = multiples.iter().map(|&r| vec![r]).collect();
        let coords = self.factorize(&PolyRing, &m, &blocks)?;
        if coords[0].1.iter().any(|p| !p.is_zero()) {
            return Err(Error::Factorization("X_α(v+w)^{-1} X_α(v) X_α(w) has a first-order part".into()));
        }
        Ok(coords
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(k, (target, components))| RelRootMap {
                source: vec![alpha],
                degree: vec![k as u32 + 1],
                target,
                components,
            })
            .collect())
    }

    /// Targets `iα + jβ` of the commutator formula as `(target, i, j)`, in
    /// product order: increasing level, then canonical order. Levels are
    /// `i + j` for independent roots and the multiple of the common
    /// primitive vector for proportional ones.
    pub fn chev_targets(&self, alpha: usize, beta: usize) -> Result<Vec<(usize, u32, u32, i64)>> {
        let (a, b) = (self.rel.element(alpha), self.rel.element(beta));
        if self.rel.opposite(alpha, beta) {
            return Err(Error::Precondition(format!("{a:?} and {b:?} are opposite multiples")));
        }
        let proportional = lattice::dependent(&a.0, &b.0);
        let mut found: HashMap<usize, (u32, u32)> = HashMap::new();
        let mut out = Vec::new();
        for i in 1..=6u32 {
            for j in 1..=6u32 {
                let t = a.scale(i as i32).add(&b.scale(j as i32));
                let Some(k) = self.rel.index_of(&t) else { continue };
                if let Some(prev) = found.insert(k, (i, j)) {
                    return Err(Error::Precondition(format!(
                        "{t:?} is both {prev:?} and {:?} in terms of {a:?}, {b:?}",
                        (i, j)
                    )));
                }
                let level = if proportional { t.height().abs() as i64 } else { (i + j) as i64 };
                out.push((k, i, j, level));
            }
        }
        out.sort_by_key(|&(k, _, _, l)| (l, k));
        Ok(out)
    }

    /// `N_{αβij}` for all targets, in product order.
    pub fn n_maps(&self, alpha: usize, beta: usize) -> Result<Arc<Vec<RelRootMap>>> {
        if let Some(m) = self.n_cache.lock().unwrap().get(&(alpha, beta)) {
            return Ok(m.clone());
        }
        let maps = Arc::new(self.compute_n(alpha, beta)?);
        self.n_cache.lock().unwrap().insert((alpha, beta), maps.clone());
        Ok(maps)
    }

    fn compute_n(&self, alpha: usize, beta: usize) -> Result<Vec<RelRootMap>> {
        let targets = self.chev_targets(alpha, beta)?;
        let (da, db) = (self.dim(alpha), self.dim(beta));
        let m = self.commutator(&PolyRing, alpha, &vars(0, da), beta, &vars(da, db));
        let blocks = level_blocks(targets.iter().map(|&(k, _, _, l)| (k, l)));
        let coords = self.factorize(&PolyRing, &m, &blocks)?;
        let degree: HashMap<usize, (u32, u32)> = targets.iter().map(|&(k, i, j, _)| (k, (i, j))).collect();
        Ok(coords
            .into_iter()
            .map(|(target, components)| {
                let (i, j) = degree[&target];
                RelRootMap { source: vec![alpha, beta], degree: vec![i, j], target, components }
            })
            .collect())
    }

    /// `N_{αβ11}`, if `α + β` is a relative root.
    pub fn n11(&self, alpha: usize, beta: usize) -> Result<Option<RelRootMap>> {
        Ok(self.n_maps(alpha, beta)?.iter().find(|m| m.degree == [1, 1]).cloned())
    }

    /// `[X_α(u), X_β(v)] = X_α(u) X_β(v) X_α(u)^{-1} X_β(v)^{-1}`.
    pub fn commutator<R: Ring>(
        &self,
        ring: &R,
        alpha: usize,
        u: &[R::Elem],
        beta: usize,
        v: &[R::Elem],
    ) -> Matrix<R::Elem> {
        self.element(ring, alpha, u)
            .mul(ring, &self.element(ring, beta, v))
            .mul(ring, &self.element_inverse(ring, alpha, u))
            .mul(ring, &self.element_inverse(ring, beta, v))
    }

    /// All computed maps as JSON, polynomials as `[coefficient, exponents]`
    /// term lists over the concatenated source coordinates.
    pub fn export_maps(&self) -> Result<Value> {
        let n = self.rel.len();
        let mut q = Vec::new();
        let mut nn = Vec::new();
        for a in 0..n {
            for m in self.q_maps(a)?.iter() {
                q.push(self.map_json(m));
            }
            for b in 0..n {
                if self.rel.opposite(a, b) {
                    continue;
                }
                for m in self.n_maps(a, b)?.iter() {
                    nn.push(self.map_json(m));
                }
            }
        }
        Ok(json!({"case": self.name(), "rep": self.rep.kind(), "q": q, "N": nn}))
    }

    fn map_json(&self, m: &RelRootMap) -> Value {
        let nvars: usize = if m.source.len() == 1 {
            2 * self.dim(m.source[0])
        } else {
            m.source.iter().map(|&s| self.dim(s)).sum()
        };
        let comps: Vec<Value> = m
            .components
            .iter()
            .map(|p| {
                let terms: Vec<Value> = p
                    .to_term_list()
                    .into_iter()
                    .map(|(c, mono)| {
                        let mut exps = vec![0u32; nvars];
                        for (v, e) in mono {
                            exps[v as usize] = e;
                        }
                        json!([c, exps])
                    })
                    .collect();
                Value::Array(terms)
            })
            .collect();
        let mut out = json!({
            "case": self.name(),
            "target": self.rel.element(m.target),
            "components": comps,
        });
        let o = out.as_object_mut().unwrap();
        o.insert("alpha".into(), json!(self.rel.element(m.source[0])));
        if let Some(&b) = m.source.get(1) {
            o.insert("beta".into(), json!(self.rel.element(b)));
            o.insert("i".into(), json!(m.degree[0]));
            o.insert("j".into(), json!(m.degree[1]));
        } else {
            o.insert("i".into(), json!(m.degree[0]));
        }
        out
    }
}

/// `[x_offset, ..., x_{offset+n-1}]`.
pub fn vars(offset: usize, n: usize) -> Vec<Poly> {
    (offset..offset + n).map(|v| Poly::var(v as u32)).collect()
}

/// Group `(root, level)` pairs into blocks of equal level, increasing,
/// keeping input order inside a block.
pub fn level_blocks(items: impl IntoIterator<Item = (usize, i64)>) -> Vec<Vec<usize>> {
    let mut items: Vec<(usize, i64)> = items.into_iter().collect();
    items.sort_by_key(|&(_, l)| l);
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for (r, l) in items {
        if last != Some(l) {
            out.push(Vec::new());
            last = Some(l);
        }
        out.last_mut().unwrap().push(r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Monomial;
    use crate::relroots::RelativeRoot;

    fn idx(case: &RelCase, v: &[i32]) -> usize {
        case.system().index_of(&RelativeRoot(v.to_vec())).unwrap()
    }

    #[test]
    fn element_is_fiber_product() {
        let case = RelCase::build(Series::A, 3, Some(&[1, 3]), None).unwrap();
        assert_eq!(case.name(), "A3/{a1,a3}");
        let a1 = idx(&case, &[1, 0]);
        assert_eq!(case.dim(a1), 2);
        let m = case.element(&PolyRing, a1, &vars(0, 2));
        let fiber = case.system().fiber(a1);
        let base = case.system().base();
        // the two fiber roots never sum to a root, so the factors commute
        assert!(base.sum_index(fiber[0], fiber[1]).is_none());
        let rev = case
            .rep()
            .root_element(&PolyRing, fiber[1], &Poly::var(1))
            .mul(&PolyRing, &case.rep().root_element(&PolyRing, fiber[0], &Poly::var(0)));
        assert_eq!(m, rev);
        let id = case.element(&PolyRing, a1, &[Poly::zero(), Poly::zero()]);
        assert!(id.is_identity(&PolyRing));
        let inv = case.element_inverse(&PolyRing, a1, &vars(0, 2));
        assert!(m.mul(&PolyRing, &inv).is_identity(&PolyRing));
    }

    #[test]
    fn a2_split_n11_is_structure_constant() {
        let case = RelCase::build(Series::A, 2, None, Some(RepKind::Adjoint)).unwrap();
        let (a1, a2) = (idx(&case, &[1, 0]), idx(&case, &[0, 1]));
        let n = case.n11(a1, a2).unwrap().unwrap();
        let c = case.rep().constants().get(case.system().fiber(a1)[0], case.system().fiber(a2)[0]) as i64;
        assert_eq!(n.components, vec![Poly::term(c, Monomial(vec![(0, 1), (1, 1)]))]);
        assert_eq!(case.n_maps(a1, a2).unwrap().len(), 1);
        // a1 + 2 a2 is not a root: no higher terms; a1, a1 + a2 commute
        let a12 = idx(&case, &[1, 1]);
        assert!(case.n_maps(a1, a12).unwrap().is_empty());
        assert!(case.q_maps(a1).unwrap().is_empty());
    }

    #[test]
    fn c2_nonreduced_q2() {
        let case = RelCase::build(Series::C, 2, Some(&[1]), Some(RepKind::Adjoint)).unwrap();
        let a = idx(&case, &[1]);
        assert_eq!(case.dim(a), 2);
        let q = case.q_maps(a).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].degree, vec![2]);
        assert_eq!(q[0].target, idx(&case, &[2]));
        let p = &q[0].components[0];
        assert!(p.is_homogeneous_in(|_| true, 2));
        // q(v, 0) = 0 and q(0, w) = 0
        let zero = |pred: fn(u32) -> bool| p.substitute(&|v| pred(v).then(Poly::zero));
        assert!(zero(|v| v >= 2).is_zero());
        assert!(zero(|v| v < 2).is_zero());
        // a single bilinear term whose coefficient is the structure constant
        // of the two short fiber roots, which is 2 up to sign
        let fiber = case.system().fiber(a);
        let n = case.rep().constants().get(fiber[0], fiber[1]).abs() as i64;
        assert_eq!(n, 2);
        assert_eq!(p.num_terms(), 1);
        assert!(p.terms().all(|(_, c)| c.abs() == n));
        // [X_α(u), X_α(v)] lands in X_{2α}
        let n = case.n_maps(a, a).unwrap();
        assert_eq!(n.len(), 1);
        assert_eq!(n[0].degree, vec![1, 1]);
    }

    #[test]
    fn opposite_pairs_rejected() {
        let case = RelCase::build(Series::A, 2, None, None).unwrap();
        let a = idx(&case, &[1, 0]);
        let na = case.system().neg_index(a);
        assert!(matches!(case.n_maps(a, na), Err(Error::Precondition(_))));
    }

    #[test]
    fn round_trip_factorization() {
        let case = RelCase::build(Series::C, 3, Some(&[1, 2]), None).unwrap();
        let sys = case.system();
        let pos = sys.positive_indices();
        let blocks = level_blocks(pos.iter().map(|&r| (r, sys.height(r) as i64)));
        let mut next = 0;
        let factors: Vec<(usize, Vec<Poly>)> = blocks
            .iter()
            .flatten()
            .map(|&r| {
                let v = vars(next, case.dim(r));
                next += case.dim(r);
                (r, v)
            })
            .collect();
        let m = case.product(&PolyRing, &factors);
        assert_eq!(case.factorize(&PolyRing, &m, &blocks).unwrap(), factors);
    }

    #[test]
    fn export_has_term_lists() {
        let case = RelCase::build(Series::A, 2, None, None).unwrap();
        let v = case.export_maps().unwrap();
        assert_eq!(v["case"], "A2 split");
        let first = &v["N"][0];
        assert_eq!(first["components"][0][0][1].as_array().unwrap().len(), 2);
    }
}
