//! Enumerated Steinberg groups compared with the elementary matrix group.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::coset::{todd_coxeter, CosetTable, EnumStats, TableStatus, Word};
use super::{presentation, Presentation, RelatorKind};
use crate::algebra::{FiniteRing, Ideal};
use crate::error::{Error, Result};
use crate::grouplab::{elementary_group, mat_from, mat_identity, GenLabel, Mat, MatrixGroup};
use crate::relcalc::{constants_invertible, RelCase};

/// Matrix group budget used alongside coset enumeration.
const MATRIX_BUDGET: usize = 12_000_000;

/// A presentation of `St_P(R)` with its coset table over the trivial
/// subgroup and the images of the generators under `s_P`.
pub struct StEnumeration {
    pub case: Arc<RelCase>,
    pub presentation: Presentation,
    pub table: CosetTable,
    images: Vec<Mat>,
    inverse_images: Vec<Mat>,
}

fn gate(case: &RelCase, ring: &FiniteRing) -> Result<()> {
    if !constants_invertible(case, ring) {
        return Err(Error::Precondition(format!(
            "structure constants of {} are not invertible in {}",
            case.name(),
            ring.name()
        )));
    }
    Ok(())
}

/// Build the presentation and enumerate it within `budget` cosets.
pub fn enumerate(case: Arc<RelCase>, ring: &FiniteRing, budget: usize) -> Result<StEnumeration> {
    gate(&case, ring)?;
    let presentation = presentation(&case, ring)?;
    let table = todd_coxeter(presentation.generators.len(), &presentation.words(), &[], budget)?;
    let mut images = Vec::new();
    let mut inverse_images = Vec::new();
    for g in &presentation.generators {
        images.push(mat_from(ring, &case.element(ring, g.alpha, &g.v))?);
        inverse_images.push(mat_from(ring, &case.element_inverse(ring, g.alpha, &g.v))?);
    }
    Ok(StEnumeration { case, presentation, table, images, inverse_images })
}

impl StEnumeration {
    pub fn ring(&self) -> &FiniteRing {
        &self.presentation.ring
    }

    pub fn order(&self) -> Option<usize> {
        self.table.is_complete().then(|| self.table.len())
    }

    fn dim(&self) -> usize {
        self.case.rep().dim()
    }

    fn letter_image(&self, x: i32) -> &Mat {
        if x > 0 {
            &self.images[x as usize - 1]
        } else {
            &self.inverse_images[(-x) as usize - 1]
        }
    }

    /// `s_P` of a word.
    pub fn word_image(&self, w: &[i32]) -> Mat {
        let ring = self.ring();
        w.iter().fold(mat_identity(self.dim()), |m, &x| crate::grouplab::mat_mul(ring, self.dim(), &m, self.letter_image(x)))
    }

    /// `s_P` of every coset, along a spanning tree.
    fn coset_images(&self) -> Vec<Mat> {
        let tree = self.table.spanning_tree();
        let mut order: Vec<usize> = (0..self.table.len()).collect();
        // parents precede children in BFS order; recompute depth order
        let mut depth = vec![0usize; self.table.len()];
        for c in 1..self.table.len() {
            let mut d = 0;
            let mut k = c;
            while k != 0 {
                k = tree[k].0;
                d += 1;
            }
            depth[c] = d;
        }
        order.sort_by_key(|&c| depth[c]);
        let mut images = vec![mat_identity(self.dim()); self.table.len()];
        for c in order.into_iter().skip(1) {
            let (p, x) = tree[c];
            images[c] = crate::grouplab::mat_mul(self.ring(), self.dim(), &images[p], self.letter_image(x));
        }
        images
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct K2Report {
    pub case: String,
    pub ring: String,
    pub generators: usize,
    pub sum_relators: usize,
    pub commutator_relators: usize,
    pub status: TableStatus,
    pub stats: EnumStats,
    pub st_order: Option<usize>,
    /// `|E_P(R)|` by matrix BFS.
    pub e_order: usize,
    /// Distinct images of cosets under `s_P`.
    pub image_order: Option<usize>,
    pub relator_failures: usize,
    /// Table entries `c · g` whose image differs from `s_P(c) s_P(g)`.
    pub table_inconsistencies: usize,
    pub divides: Option<bool>,
    pub kernel_order: Option<usize>,
    pub centrality_checks: usize,
    pub centrality_violations: Vec<Value>,
    pub note: String,
}

impl K2Report {
    pub fn passed(&self) -> bool {
        self.status == TableStatus::Complete
            && self.relator_failures == 0
            && self.table_inconsistencies == 0
            && self.divides == Some(true)
            && self.image_order == Some(self.e_order)
            && self.centrality_violations.is_empty()
    }
}

/// Enumerate `St_P(R)`, check that `s_P` is well defined and that its
/// kernel commutes with every generator.
pub fn verify_k2_centrality(case: Arc<RelCase>, ring: &FiniteRing, budget: usize) -> Result<(K2Report, StEnumeration)> {
    if case.system().rank() < 2 {
        return Err(Error::Precondition("relative rank must be at least 2".into()));
    }
    if !ring.is_local() {
        return Err(Error::Precondition(format!("{} is not local", ring.name())));
    }
    let st = enumerate(case.clone(), ring, budget)?;
    let e = elementary_group(&case, ring, MATRIX_BUDGET)?;
    let id = mat_identity(st.dim());
    let p = &st.presentation;
    let relator_failures = p.relators.iter().filter(|r| st.word_image(&r.word) != id).count();
    let mut report = K2Report {
        case: case.name(),
        ring: ring.name().to_string(),
        generators: p.generators.len(),
        sum_relators: p.count(RelatorKind::Sum),
        commutator_relators: p.count(RelatorKind::Commutator),
        status: st.table.status,
        stats: st.table.stats.clone(),
        st_order: st.order(),
        e_order: e.len(),
        image_order: None,
        relator_failures,
        table_inconsistencies: 0,
        divides: None,
        kernel_order: None,
        centrality_checks: 0,
        centrality_violations: Vec::new(),
        note: "kernel elements are compared with generators only; since the generators generate, this is centrality"
            .into(),
    };
    let Some(order) = st.order() else {
        return Ok((report, st));
    };
    let images = st.coset_images();
    let ngens = p.generators.len();
    for c in 0..order {
        for k in 1..=ngens as i32 {
            let expect = crate::grouplab::mat_mul(ring, st.dim(), &images[c], st.letter_image(k));
            if images[st.table.act(c, k)] != expect {
                report.table_inconsistencies += 1;
            }
        }
    }
    let distinct: HashSet<&Mat> = images.iter().collect();
    report.image_order = Some(distinct.len());
    report.divides = Some(order % e.len() == 0);
    let kernel: Vec<usize> = (0..order).filter(|&c| images[c] == id).collect();
    report.kernel_order = Some(kernel.len());
    let tree = st.table.spanning_tree();
    for &k in &kernel {
        let w = CosetTable::representative(&tree, k);
        for g in 1..=ngens as i32 {
            report.centrality_checks += 1;
            let kg = st.table.act(k, g);
            let gk = st.table.trace(st.table.act(0, g), &w);
            if kg != gk {
                report.centrality_violations.push(json!({"kernel_word": w, "generator": g}));
            }
        }
    }
    Ok((report, st))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonoReport {
    pub case: String,
    pub ring: String,
    pub set: Vec<Vec<i32>>,
    /// Order of the image of `Ũ_S` in `St_P(R)`.
    pub steinberg_order: usize,
    /// `|U_S(R)|` in the matrix group.
    pub matrix_order: usize,
}

impl MonoReport {
    pub fn passed(&self) -> bool {
        self.steinberg_order == self.matrix_order
    }
}

/// Compare `Ũ_S`, the subgroup of `St_P(R)` generated by `X̃_α(V_α)`,
/// `α ∈ S`, with its image `U_S(R)`. `S` must be closed under positive
/// sums and contain no opposite multiples.
pub fn verify_mono(st: &StEnumeration, set: &[usize]) -> Result<MonoReport> {
    let case = &st.case;
    let sys = case.system();
    for &a in set {
        for &b in set {
            if sys.opposite(a, b) {
                return Err(Error::Precondition(format!(
                    "{:?} and {:?} are opposite multiples",
                    sys.element(a).0,
                    sys.element(b).0
                )));
            }
            for (t, ..) in case.chev_targets(a, b)? {
                if !set.contains(&t) {
                    return Err(Error::Precondition(format!("{:?} is missing from S", sys.element(t).0)));
                }
            }
        }
    }
    if !st.table.is_complete() {
        return Err(Error::Precondition("coset enumeration did not complete".into()));
    }
    let p = &st.presentation;
    let letters: Vec<i32> =
        (0..p.generators.len()).filter(|&i| set.contains(&p.generators[i].alpha)).map(|i| i as i32 + 1).collect();
    let gens: Vec<(GenLabel, Mat)> = letters
        .iter()
        .map(|&x| {
            let g = &p.generators[x as usize - 1];
            (GenLabel { alpha: g.alpha, v: g.v.clone() }, st.images[x as usize - 1])
        })
        .collect();
    let u = MatrixGroup::generate(st.ring().clone(), st.dim(), gens, MATRIX_BUDGET)?;
    Ok(MonoReport {
        case: case.name(),
        ring: st.ring().name().to_string(),
        set: set.iter().map(|&a| sys.element(a).0.clone()).collect(),
        steinberg_order: st.table.orbit(&letters),
        matrix_order: u.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StKerReport {
    pub case: String,
    pub ring: String,
    pub ideal: String,
    pub st_order: Option<usize>,
    pub quotient_ring: String,
    pub st_quotient_order: Option<usize>,
    /// `|St_P(R) / <<X̃_α(I V_α)>>|`.
    pub killed_order: Option<usize>,
    /// Index of the subgroup generated by the `X̃_α(I V_α)`, not its normal closure.
    pub level_subgroup_index: Option<usize>,
    pub normal_closure_order: Option<usize>,
}

impl StKerReport {
    pub fn passed(&self) -> bool {
        matches!((self.killed_order, self.st_quotient_order), (Some(a), Some(b)) if a == b)
    }
}

/// Check `St_P(R) / Ẽ(R, I) ≅ St_P(R/I)` on orders: killing the level-`I`
/// generators of `St_P(R)` leaves a group of order `|St_P(R/I)|`.
pub fn verify_st_ker(case: Arc<RelCase>, ring: &FiniteRing, ideal: &Ideal, budget: usize) -> Result<StKerReport> {
    gate(&case, ring)?;
    let full = presentation(&case, ring)?;
    let words = full.words();
    let n = full.generators.len();
    let st = todd_coxeter(n, &words, &[], budget)?;
    let (quotient, _) = ring.quotient(ideal);
    let qp = presentation(&case, &quotient)?;
    let sq = todd_coxeter(qp.generators.len(), &qp.words(), &[], budget)?;
    let level: Vec<Word> = full
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.v.iter().all(|&x| ideal.contains(x)))
        .map(|(i, _)| vec![i as i32 + 1])
        .collect();
    let killed = todd_coxeter(n, &[words.clone(), level.clone()].concat(), &[], budget)?;
    let relative = todd_coxeter(n, &words, &level, budget)?;
    let order = |t: &CosetTable| t.is_complete().then(|| t.len());
    let normal_closure_order = match (order(&st), order(&killed)) {
        (Some(a), Some(b)) => Some(a / b),
        _ => None,
    };
    Ok(StKerReport {
        case: case.name(),
        ring: ring.name().to_string(),
        ideal: ring.ideal_name(ideal),
        st_order: order(&st),
        quotient_ring: quotient.name().to_string(),
        st_quotient_order: order(&sq),
        killed_order: order(&killed),
        level_subgroup_index: order(&relative),
        normal_closure_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::Series;

    fn a2() -> Arc<RelCase> {
        Arc::new(RelCase::build(Series::A, 2, None, None).unwrap())
    }

    #[test]
    fn a2_over_f2() {
        let (r, st) = verify_k2_centrality(a2(), &FiniteRing::field(2).unwrap(), 100_000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.e_order, 168);
        assert_eq!(r.st_order.unwrap() % 168, 0);
        let sys = st.case.system();
        let pos = sys.positive_indices();
        let m = verify_mono(&st, &pos).unwrap();
        assert_eq!((m.steinberg_order, m.matrix_order), (8, 8));
        for a in 0..sys.len() {
            let m = verify_mono(&st, &[a]).unwrap();
            assert_eq!((m.steinberg_order, m.matrix_order), (2, 2));
        }
        let opp = [pos[0], sys.neg_index(pos[0])];
        assert!(matches!(verify_mono(&st, &opp), Err(Error::Precondition(_))));
    }

    #[test]
    fn type_c_needs_two_invertible() {
        let c2 = Arc::new(RelCase::build(Series::C, 2, None, None).unwrap());
        assert!(enumerate(c2, &FiniteRing::zmod(4).unwrap(), 1000).is_err());
    }

    #[test]
    fn st_ker_trivial_ideals() {
        let ring = FiniteRing::field(2).unwrap();
        let r = verify_st_ker(a2(), &ring, &ring.unit_ideal(), 100_000).unwrap();
        assert_eq!(r.st_quotient_order, Some(1));
        assert!(r.passed());
        let r = verify_st_ker(a2(), &ring, &ring.zero_ideal(), 100_000).unwrap();
        assert_eq!(r.killed_order, r.st_order);
        assert_eq!(r.level_subgroup_index, r.st_order);
        assert!(r.passed());
    }
}
