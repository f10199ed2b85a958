//! Elementary groups `E_P(R)` over finite rings, their level subgroups,
//! normal closures and the ideals they determine.

pub mod gauss;
pub mod group;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{FiniteRing, Ideal};
use crate::error::{Error, Result};
use crate::relcalc::{constants_invertible, RelCase};

pub use gauss::{gauss_and_diameter, GaussReport};
pub use group::{mat_from, mat_identity, mat_mul, mat_rows, GenLabel, Mat, MatrixGroup, Subgroup, MAX_DIM};

/// Default element budget for enumerating `E_P(R)`.
pub const DEFAULT_GROUP_BUDGET: usize = 12_000_000;

/// All tuples over the ideal `I` of length `d`, in lexicographic order.
pub fn module_elements(ideal: &Ideal, d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| ideal.0.iter().map(move |&x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// A small additive generating set of the ideal, greedy in element order.
pub fn ideal_additive_generators(ring: &FiniteRing, ideal: &Ideal) -> Vec<u8> {
    let mut span = vec![false; ring.size()];
    span[0] = true;
    let mut gens = Vec::new();
    for &a in &ideal.0 {
        if span[a as usize] {
            continue;
        }
        gens.push(a);
        loop {
            let mut grew = false;
            for x in 0..ring.size() as u8 {
                if span[x as usize] {
                    let y = ring.add_u8(x, a);
                    if !span[y as usize] {
                        span[y as usize] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }
    gens
}

/// `E_P(R)` for a split inner case, realized in the case's representation.
pub struct LabCase {
    case: Arc<RelCase>,
    group: MatrixGroup,
}

impl LabCase {
    /// Enumerate `E_P(R) = <X_α(V_α ⊗ R)>` from the elements `X_α(r e_k)`,
    /// `r` running over additive generators of `R`.
    pub fn new(case: Arc<RelCase>, ring: FiniteRing, budget: usize) -> Result<Self> {
        let group = elementary_group(&case, &ring, budget)?;
        Ok(LabCase { case, group })
    }

    pub fn name(&self) -> String {
        format!("{} / {}", self.case.name(), self.ring().name())
    }

    pub fn case(&self) -> &RelCase {
        &self.case
    }

    pub fn ring(&self) -> &FiniteRing {
        self.group.ring()
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    /// Index of `X_α(v)`.
    pub fn root_element(&self, alpha: usize, v: &[u8]) -> u32 {
        let m = mat_from(self.ring(), &self.case.element(self.ring(), alpha, v)).expect("dimension checked");
        self.group.index_of(&m).expect("root elements lie in E")
    }

    /// `X_α(v)` for all `v ∈ I V_α`, in lexicographic order of `v`.
    pub fn root_elements(&self, alpha: usize, ideal: &Ideal) -> Vec<(Vec<u8>, u32)> {
        module_elements(ideal, self.case.dim(alpha)).into_iter().map(|v| {
            let e = self.root_element(alpha, &v);
            (v, e)
        }).collect()
    }

    /// `X_α(r e_k)` over all `α`, coordinates `k` and additive generators `r`
    /// of `I`; these generate `E_P(I)`.
    pub fn level_generators(&self, ideal: &Ideal) -> Vec<u32> {
        let gens = ideal_additive_generators(self.ring(), ideal);
        let sys = self.case.system();
        let mut out = Vec::new();
        for a in 0..sys.len() {
            for k in 0..self.case.dim(a) {
                for &r in &gens {
                    let mut v = vec![0; self.case.dim(a)];
                    v[k] = r;
                    out.push(self.root_element(a, &v));
                }
            }
        }
        out
    }

    fn check_hypotheses(&self) -> Result<()> {
        if self.case.system().rank() < 2 {
            return Err(Error::Precondition("relative rank must be at least 2".into()));
        }
        if !constants_invertible(&self.case, self.ring()) {
            return Err(Error::Precondition(format!(
                "structure constants of {} are not invertible in {}",
                self.case.name(),
                self.ring().name()
            )));
        }
        Ok(())
    }
}

/// The BFS-enumerated elementary group of `case` over `ring`.
pub fn elementary_group(case: &RelCase, ring: &FiniteRing, budget: usize) -> Result<MatrixGroup> {
    let dim = case.rep().dim();
    if dim > MAX_DIM {
        return Err(Error::Precondition(format!("representation of dimension {dim} is too large")));
    }
    let sys = case.system();
    let mut gens = Vec::new();
    for a in 0..sys.len() {
        let d = case.dim(a);
        for k in 0..d {
            for r in ring.additive_generators() {
                let mut v = vec![0; d];
                v[k] = r;
                gens.push((GenLabel { alpha: a, v: v.clone() }, mat_from(ring, &case.element(ring, a, &v))?));
            }
        }
    }
    MatrixGroup::generate(ring.clone(), dim, gens, budget)
}

/// `G(R, I) ∩ E_P(R) = E*_P(R, I)`: elements congruent to 1 modulo `I`.
pub fn congruence_subgroup(lab: &LabCase, ideal: &Ideal) -> Subgroup {
    let g = lab.group();
    let id = mat_identity(g.dim());
    let ring = lab.ring();
    g.subset((0..g.len() as u32).filter(|&i| {
        let m = g.element(i);
        (0..16).all(|k| ideal.contains(ring.add_u8(m[k], ring.neg_u8(id[k]))))
    }))
}

/// `E_P(I)`.
pub fn elementary_level(lab: &LabCase, ideal: &Ideal) -> Subgroup {
    lab.group().closure(&lab.level_generators(ideal))
}

/// `E_P(R, I)`, the normal closure of `E_P(I)`.
pub fn elementary_normal_level(lab: &LabCase, ideal: &Ideal) -> Subgroup {
    lab.group().normal_closure(&lab.level_generators(ideal))
}

pub fn normal_closure(lab: &LabCase, seeds: &[u32]) -> Subgroup {
    lab.group().normal_closure(seeds)
}

/// Orders of the three level subgroups of one ideal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub ideal: String,
    pub elementary_level: usize,
    pub normal_level: usize,
    pub congruence: usize,
    /// `E_P(I) ⊆ E_P(R,I) ⊆ E*_P(R,I)`.
    pub containments_hold: bool,
    pub normal_equals_congruence: bool,
}

pub fn level_report(lab: &LabCase, ideal: &Ideal) -> (LevelReport, Subgroup) {
    let e = elementary_level(lab, ideal);
    let n = elementary_normal_level(lab, ideal);
    let c = congruence_subgroup(lab, ideal);
    let report = LevelReport {
        ideal: lab.ring().ideal_name(ideal),
        elementary_level: e.len(),
        normal_level: n.len(),
        congruence: c.len(),
        containments_hold: e.is_subset(&n) && n.is_subset(&c),
        normal_equals_congruence: n == c,
    };
    (report, n)
}

/// The ideal attached to a normal subgroup, with the intersections
/// `N ∩ X_α(V_α) = X_α(M_α)` it was read from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealWitness {
    /// The unique fitting ideal; `None` is a counterexample.
    pub ideal: Option<String>,
    pub ideal_elements: Option<Vec<u8>>,
    /// Number of ideals `I` with `M_α = I V_α` for every `α`.
    pub fitting: usize,
    /// `|M_α|` per relative root.
    pub intersections: Vec<(Vec<i32>, usize)>,
    /// Every `M_α` is closed under addition and scalars.
    pub submodules: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Value>,
}

impl IdealWitness {
    pub fn succeeded(&self) -> bool {
        self.fitting == 1 && self.submodules
    }
}

/// Find the ideal `I` with `N ∩ X_α(V_α) = X_α(I V_α)` for all `α`.
pub fn extract_ideal(lab: &LabCase, n: &Subgroup) -> Result<IdealWitness> {
    lab.check_hypotheses()?;
    if !lab.group().is_normal(n) {
        return Err(Error::NotNormal(format!("subgroup of order {} in {}", n.len(), lab.name())));
    }
    let ring = lab.ring();
    let sys = lab.case().system();
    let unit = ring.unit_ideal();
    let mut ms: Vec<Vec<Vec<u8>>> = Vec::new();
    let mut submodules = true;
    for a in 0..sys.len() {
        let m: Vec<Vec<u8>> =
            lab.root_elements(a, &unit).into_iter().filter(|(_, e)| n.contains(*e)).map(|(v, _)| v).collect();
        let set: std::collections::HashSet<&Vec<u8>> = m.iter().collect();
        let closed = m.iter().all(|x| {
            m.iter().all(|y| set.contains(&x.iter().zip(y).map(|(&p, &q)| ring.add_u8(p, q)).collect::<Vec<_>>()))
                && ring.elements().all(|r| set.contains(&x.iter().map(|&p| ring.mul_u8(r, p)).collect::<Vec<_>>()))
        });
        submodules &= closed;
        ms.push(m);
    }
    let fits = |i: &Ideal| {
        (0..sys.len()).all(|a| {
            let d = lab.case().dim(a);
            ms[a].len() == i.len().pow(d as u32) && ms[a].iter().all(|v| v.iter().all(|&x| i.contains(x)))
        })
    };
    let fitting: Vec<Ideal> = ring.ideals().into_iter().filter(|i| fits(i)).collect();
    let intersections = (0..sys.len()).map(|a| (sys.element(a).0.clone(), ms[a].len())).collect();
    let counterexample = (fitting.len() != 1).then(|| {
        json!({
            "subgroup_order": n.len(),
            "fitting_ideals": fitting.iter().map(|i| ring.ideal_name(i)).collect::<Vec<_>>(),
            "intersections": (0..sys.len()).map(|a| json!({
                "alpha": sys.element(a).0,
                "M": ms[a].iter().map(|v| v.iter().map(|&x| ring.label(x).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    });
    let unique = (fitting.len() == 1).then(|| fitting[0].clone());
    Ok(IdealWitness {
        ideal: unique.as_ref().map(|i| ring.ideal_name(i)),
        ideal_elements: unique.map(|i| i.0),
        fitting: fitting.len(),
        intersections,
        submodules,
        counterexample,
    })
}

/// Over a finite ring every ideal has finite index, so the topological
/// statement reduces to [`extract_ideal`] succeeding; the index is reported.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteIndexReport {
    pub subgroup_index: usize,
    pub witness: IdealWitness,
    pub ideal_index: Option<usize>,
}

pub fn finite_index_ideal(lab: &LabCase, n: &Subgroup) -> Result<FiniteIndexReport> {
    let witness = extract_ideal(lab, n)?;
    let ideal_index = witness.ideal_elements.as_ref().map(|i| lab.ring().size() / i.len());
    Ok(FiniteIndexReport { subgroup_index: lab.group().len() / n.len(), witness, ideal_index })
}

/// Comparison of `E_P(R, I)` with the subgroup generated by the elements
/// `Z_α(a, u_1, ...) = a (prod_i X_{iα}(u_i)) a^{-1}`, `a ∈ E_α(R)`,
/// `u_i ∈ I V_{iα}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EGenReport {
    pub ideal: String,
    pub z_elements: usize,
    pub generated_order: usize,
    pub normal_level_order: usize,
    pub equal: bool,
}

/// `E_α(R) = <U_(α)(R), U_(-α)(R)>`.
pub fn rank_one_subgroup(lab: &LabCase, alpha: usize) -> Subgroup {
    let sys = lab.case().system();
    let unit = lab.ring().unit_ideal();
    let neg = sys.neg_index(alpha);
    let mut seeds = Vec::new();
    for b in multiples(lab, alpha).into_iter().chain(multiples(lab, neg)) {
        seeds.extend(lab.root_elements(b, &unit).into_iter().map(|(_, e)| e));
    }
    lab.group().closure(&seeds)
}

/// `iα` for `i = 1, 2, ...` while it is a relative root.
fn multiples(lab: &LabCase, alpha: usize) -> Vec<usize> {
    let sys = lab.case().system();
    let a = sys.element(alpha);
    (1..=4).map_while(|i| sys.index_of(&a.scale(i))).collect()
}

pub fn verify_e_gen(lab: &LabCase, ideal: &Ideal) -> EGenReport {
    let g = lab.group();
    let sys = lab.case().system();
    let mut h = g.trivial();
    let mut z_elements = 0;
    for a in 0..sys.len() {
        // U_(α)(I) as products over the multiples of α
        let mut u: Vec<u32> = vec![0];
        for b in multiples(lab, a) {
            let xs = lab.root_elements(b, ideal);
            u = u.iter().flat_map(|&p| xs.iter().map(move |&(_, x)| g.mul(p, x))).collect();
        }
        u.sort_unstable();
        u.dedup();
        let ea = rank_one_subgroup(lab, a);
        for &c in ea.elements() {
            for &x in &u {
                z_elements += 1;
                // a x a^{-1} is the conjugate of x by a^{-1}
                let z = g.conjugate(x, g.inverse(c));
                g.extend(&mut h, z);
            }
        }
    }
    let n = elementary_normal_level(lab, ideal);
    EGenReport {
        ideal: lab.ring().ideal_name(ideal),
        z_elements,
        generated_order: h.len(),
        normal_level_order: n.len(),
        equal: h == n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::Series;

    fn lab(series: Series, rank: usize, j: Option<&[usize]>, ring: &str) -> LabCase {
        let case = Arc::new(RelCase::build(series, rank, j, None).unwrap());
        LabCase::new(case, FiniteRing::parse(ring).unwrap(), 1 << 22).unwrap()
    }

    fn ideal(ring: &FiniteRing, gen: &str) -> Ideal {
        ring.ideal_generated(&[ring.parse_element(gen).unwrap()])
    }

    #[test]
    fn group_orders() {
        assert_eq!(lab(Series::A, 2, None, "F2").group().len(), 168);
        assert_eq!(lab(Series::A, 2, None, "F3").group().len(), 5616);
        assert_eq!(lab(Series::A, 2, None, "Z/4").group().len(), 43008);
        // 3^4 (3^2 - 1)(3^4 - 1)
        assert_eq!(lab(Series::C, 2, None, "F3").group().len(), 51840);
        // the parabolic with Levi GL2 x GL1 still generates SL4(F2)
        assert_eq!(lab(Series::A, 3, Some(&[1, 2]), "F2").group().len(), 20160);
    }

    #[test]
    fn level_subgroups_over_z4() {
        let l = lab(Series::A, 2, None, "Z/4");
        let i = ideal(l.ring(), "2");
        let (r, n) = level_report(&l, &i);
        assert_eq!(r.congruence, 256);
        assert!(r.containments_hold);
        // E_P(I) is the abelian group of off-diagonal level-2 matrices
        assert_eq!(r.elementary_level, 64);
        let w = extract_ideal(&l, &n).unwrap();
        assert_eq!(w.ideal.as_deref(), Some("(2)"));
        assert!(w.succeeded());
    }

    #[test]
    fn trivial_ideals() {
        let l = lab(Series::A, 2, None, "F3");
        let zero = l.ring().zero_ideal();
        let unit = l.ring().unit_ideal();
        let (r0, n0) = level_report(&l, &zero);
        assert_eq!((r0.elementary_level, r0.normal_level, r0.congruence), (1, 1, 1));
        let (r1, n1) = level_report(&l, &unit);
        assert_eq!((r1.elementary_level, r1.normal_level, r1.congruence), (5616, 5616, 5616));
        assert_eq!(extract_ideal(&l, &n0).unwrap().ideal.as_deref(), Some("(0)"));
        assert_eq!(extract_ideal(&l, &n1).unwrap().ideal.as_deref(), Some("R"));
    }

    #[test]
    fn center_gives_zero_ideal() {
        let l = lab(Series::A, 2, None, "F4");
        // scalar matrices w with w^3 = 1
        let ring = l.ring();
        let w = ring.elements().find(|&x| x > 1).unwrap();
        let mut m = [0u8; 16];
        for i in 0..3 {
            m[i * MAX_DIM + i] = w;
        }
        let c = l.group().index_of(&m).unwrap();
        let n = normal_closure(&l, &[c]);
        assert_eq!(n.len(), 3);
        assert_eq!(extract_ideal(&l, &n).unwrap().ideal.as_deref(), Some("(0)"));
    }

    #[test]
    fn non_normal_rejected() {
        let l = lab(Series::A, 2, None, "F2");
        let h = l.group().closure(&[l.group().generator_index(0)]);
        assert!(matches!(extract_ideal(&l, &h), Err(Error::NotNormal(_))));
    }

    #[test]
    fn e_gen_over_z4() {
        let l = lab(Series::A, 2, None, "Z/4");
        let r = verify_e_gen(&l, &ideal(l.ring(), "2"));
        assert!(r.equal, "{r:?}");
        let r0 = verify_e_gen(&l, &l.ring().zero_ideal());
        assert_eq!((r0.generated_order, r0.normal_level_order), (1, 1));
    }
}
