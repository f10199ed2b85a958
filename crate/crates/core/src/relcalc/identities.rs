//! Symbolic verification of the sum relation, the generalized commutator
//! formula and the degree properties of the computed maps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{level_blocks, vars, RelCase, RelRootMap};
use crate::algebra::{Matrix, Poly, PolyRing};
use crate::chevalley::RepKind;
use crate::error::Result;
use crate::relroots::ProjectionSpec;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub case: String,
    pub rep: RepKind,
    pub sum_checked: usize,
    pub chev_checked: usize,
    pub homogeneity_checked: usize,
    pub bilinearity_checked: usize,
    pub round_trips_checked: usize,
    pub failures: Vec<Value>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `p(λ x)` for the variables selected by `pred`, `λ` the variable `lambda`.
fn scale_vars(p: &Poly, pred: impl Fn(u32) -> bool, lambda: u32) -> Poly {
    p.substitute(&|v| pred(v).then(|| Poly::var(lambda).mul(&Poly::var(v))))
}

fn maps_product(case: &RelCase, maps: &[RelRootMap]) -> Matrix<Poly> {
    let factors: Vec<(usize, Vec<Poly>)> = maps.iter().map(|m| (m.target, m.components.clone())).collect();
    case.product(&PolyRing, &factors)
}

/// Check `eq:sum` for `α` and the degree-`i` homogeneity of each `q^i_α`.
fn check_sum(case: &RelCase, alpha: usize, failures: &mut Vec<Value>) -> Result<usize> {
    let sys = case.system();
    let q = case.q_maps(alpha)?;
    let d = case.dim(alpha);
    let (v, w) = (vars(0, d), vars(d, d));
    let vw: Vec<Poly> = v.iter().zip(&w).map(|(a, b)| a.add(b)).collect();
    let lhs = case.element(&PolyRing, alpha, &v).mul(&PolyRing, &case.element(&PolyRing, alpha, &w));
    let rhs = case.element(&PolyRing, alpha, &vw).mul(&PolyRing, &maps_product(case, &q));
    if lhs != rhs {
        failures.push(json!({"identity": "sum", "alpha": sys.element(alpha)}));
    }
    let lambda = 2 * d as u32;
    for m in q.iter() {
        let i = m.degree[0];
        for p in &m.components {
            let scaled = scale_vars(p, |_| true, lambda);
            if scaled != Poly::var(lambda).pow(i).mul(p) {
                failures.push(json!({"identity": "q homogeneity", "alpha": sys.element(alpha), "i": i}));
            }
            if !p.substitute(&|x| (x >= d as u32).then(Poly::zero)).is_zero() {
                failures.push(json!({"identity": "q(v, 0) = 0", "alpha": sys.element(alpha), "i": i}));
            }
        }
    }
    Ok(q.len())
}

/// Check `eq:Chev` for `(α, β)`, the bidegrees and biadditivity of `N_{αβ11}`.
/// Returns the numbers of homogeneity and bilinearity checks made.
fn check_chev(case: &RelCase, alpha: usize, beta: usize, failures: &mut Vec<Value>) -> Result<(usize, usize)> {
    let sys = case.system();
    let n = case.n_maps(alpha, beta)?;
    let (da, db) = (case.dim(alpha), case.dim(beta));
    let (u, v) = (vars(0, da), vars(da, db));
    let lhs = case.commutator(&PolyRing, alpha, &u, beta, &v);
    if lhs != maps_product(case, &n) {
        failures.push(json!({"identity": "chev", "alpha": sys.element(alpha), "beta": sys.element(beta)}));
    }
    let nv = (da + db) as u32;
    let (lambda, mu) = (nv, nv + 1);
    let mut homog = 0;
    let mut bilinear = 0;
    for m in n.iter() {
        let (i, j) = (m.degree[0], m.degree[1]);
        for p in &m.components {
            homog += 1;
            let scaled = scale_vars(&scale_vars(p, |x| x < da as u32, lambda), |x| x >= da as u32 && x < nv, mu);
            if scaled != Poly::var(lambda).pow(i).mul(&Poly::var(mu).pow(j)).mul(p) {
                failures.push(json!({
                    "identity": "N bidegree", "alpha": sys.element(alpha), "beta": sys.element(beta), "i": i, "j": j,
                }));
            }
            if (i, j) == (1, 1) {
                bilinear += 1;
                // u -> u + u', then v -> v + v', with fresh variables
                let shift = |p: &Poly, lo: u32, hi: u32| {
                    p.substitute(&|x| (x >= lo && x < hi).then(|| Poly::var(x).add(&Poly::var(x - lo + nv))))
                };
                let only = |p: &Poly, lo: u32, hi: u32| p.substitute(&|x| (x >= lo && x < hi).then(|| Poly::var(x - lo + nv)));
                let first = shift(p, 0, da as u32);
                let second = shift(p, da as u32, nv);
                let first_ok = first == p.add(&only(p, 0, da as u32));
                let second_ok = second == p.add(&only(p, da as u32, nv));
                if !(first_ok && second_ok) {
                    failures.push(json!({
                        "identity": "N11 biadditive", "alpha": sys.element(alpha), "beta": sys.element(beta),
                    }));
                }
            }
        }
    }
    Ok((homog, bilinear))
}

/// Products over the positive (resp. negative) relative roots in height
/// order, with the roots of each height in canonical and in reversed order,
/// must factorize back to their inputs.
fn check_round_trips(case: &RelCase, failures: &mut Vec<Value>) -> Result<usize> {
    let sys = case.system();
    let mut count = 0;
    for sign in [1i64, -1] {
        let roots: Vec<usize> = (0..sys.len()).filter(|&r| (sys.height(r) as i64) * sign > 0).collect();
        let canonical = level_blocks(roots.iter().map(|&r| (r, sign * sys.height(r) as i64)));
        let reversed: Vec<Vec<usize>> = canonical.iter().map(|b| b.iter().rev().copied().collect()).collect();
        for blocks in [canonical, reversed] {
            count += 1;
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
            match case.factorize(&PolyRing, &m, &blocks) {
                Ok(f) if f == factors => {}
                Ok(_) => failures.push(json!({"identity": "round trip", "sign": sign, "reason": "wrong coordinates"})),
                Err(e) => failures.push(json!({"identity": "round trip", "sign": sign, "reason": e.to_string()})),
            }
        }
    }
    Ok(count)
}

/// Every symbolic identity of the calculus for one case.
pub fn verify_identities(case: &RelCase) -> Result<IdentityReport> {
    let sys = case.system();
    let n = sys.len();
    let mut failures = Vec::new();
    let mut sum_checked = 0;
    let mut homogeneity = 0;
    for a in 0..n {
        let q = check_sum(case, a, &mut failures)?;
        sum_checked += 1;
        homogeneity += q;
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| !sys.opposite(a, b)).collect();
    let results: Vec<Result<(Vec<Value>, usize, usize)>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut f = Vec::new();
            let (h, l) = check_chev(case, a, b, &mut f)?;
            Ok((f, h, l))
        })
        .collect();
    let mut bilinear = 0;
    for r in results {
        let (f, h, l) = r?;
        failures.extend(f);
        homogeneity += h;
        bilinear += l;
    }
    let round_trips = check_round_trips(case, &mut failures)?;
    Ok(IdentityReport {
        case: case.name(),
        rep: case.rep().kind(),
        sum_checked,
        chev_checked: pairs.len(),
        homogeneity_checked: homogeneity,
        bilinearity_checked: bilinear,
        round_trips_checked: round_trips,
        failures,
    })
}

/// Compare every `q` and `N` map computed in the adjoint representation
/// with those computed in the classical one. Returns the mismatches.
pub fn rep_independence(spec: ProjectionSpec) -> Result<Vec<Value>> {
    let adjoint = RelCase::new(spec.clone(), RepKind::Adjoint)?;
    let classical = RelCase::preferred(spec)?;
    let sys = adjoint.system();
    let n = sys.len();
    let mut out = Vec::new();
    for a in 0..n {
        if adjoint.q_maps(a)? != classical.q_maps(a)? {
            out.push(json!({"map": "q", "alpha": sys.element(a)}));
        }
        for b in 0..n {
            if !sys.opposite(a, b) && adjoint.n_maps(a, b)? != classical.n_maps(a, b)? {
                out.push(json!({"map": "N", "alpha": sys.element(a), "beta": sys.element(b)}));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::Series;

    #[test]
    fn a2_split_identities() {
        let case = RelCase::build(Series::A, 2, None, None).unwrap();
        let r = verify_identities(&case).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.sum_checked, 6);
        // 6 * 6 ordered pairs minus the 6 opposite ones
        assert_eq!(r.chev_checked, 30);
        assert_eq!(r.round_trips_checked, 4);
    }

    #[test]
    fn c2_rank_one_identities() {
        let case = RelCase::build(Series::C, 2, Some(&[1]), Some(RepKind::Adjoint)).unwrap();
        let r = verify_identities(&case).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.homogeneity_checked > 0);
    }

    #[test]
    fn wrong_map_is_detected() {
        let case = RelCase::build(Series::A, 2, None, None).unwrap();
        let sys = case.system();
        let (a, b) = (sys.simple_indices()[0], sys.simple_indices()[1]);
        let mut maps = (*case.n_maps(a, b).unwrap()).clone();
        assert_eq!(maps.len(), 1);
        maps[0].components[0] = maps[0].components[0].scale(2);
        let (u, v) = (vars(0, 1), vars(1, 1));
        assert_ne!(case.commutator(&PolyRing, a, &u, b, &v), maps_product(&case, &maps));
    }
}
