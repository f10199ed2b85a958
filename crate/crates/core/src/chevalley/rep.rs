//! Integral representations of the Chevalley Lie algebra and their root
//! elements `x_a(t) = sum_k t^k X_a^k / k!`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::StructureConstants;
use crate::algebra::{Integers, Matrix, Ring};
use crate::error::{Error, Result};
use crate::rootcore::{Root, RootSystem, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Adjoint,
    /// The natural `(n+1)`-dimensional representation of type `A_n`.
    Natural,
    /// The `2n`-dimensional representation of type `C_n`, preserving
    /// `[[0, I], [-I, 0]]`.
    Symplectic,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RepKind::Adjoint => "adjoint",
            RepKind::Natural => "natural",
            RepKind::Symplectic => "symplectic",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Representation {
    kind: RepKind,
    constants: Arc<StructureConstants>,
    dim: usize,
    /// `divided[a][k-1] = X_a^k / k!`, nonzero powers only.
    divided: Vec<Vec<Matrix<i64>>>,
    /// Transposes of `divided`, for column access.
    columns: Vec<Vec<Matrix<i64>>>,
    /// A nonzero entry `(row, col, value)` of `X_a` with smallest `|value|`.
    probes: Vec<(usize, usize, i64)>,
}

impl Representation {
    pub fn adjoint(constants: Arc<StructureConstants>) -> Self {
        let sys = constants.system();
        let dim = constants.lie_dim();
        let gens = (0..sys.len())
            .map(|a| {
                Matrix::from_entries(
                    &Integers,
                    dim,
                    (0..dim).flat_map(|j| constants.lie_bracket(a, j).into_iter().map(move |(i, v)| (i, j, v))),
                )
            })
            .collect();
        Self::from_generators(RepKind::Adjoint, constants, gens)
    }

    /// The natural representation (type `A_n`) or the symplectic one (type
    /// `C_n`), built from the simple root matrices by bracketing along
    /// extraspecial pairs.
    pub fn classical(constants: Arc<StructureConstants>) -> Result<Self> {
        let sys = constants.system();
        let comps = sys.components();
        if comps.len() != 1 {
            return Err(Error::NoClassicalRep(sys.name()));
        }
        let n = sys.rank();
        let (kind, dim, simple): (RepKind, usize, Vec<Vec<(usize, usize, i64)>>) = match comps[0].series {
            Series::A => (RepKind::Natural, n + 1, (0..n).map(|i| vec![(i, i + 1, 1)]).collect()),
            Series::C => (
                RepKind::Symplectic,
                2 * n,
                (0..n)
                    .map(|i| if i + 1 < n { vec![(i, i + 1, 1), (n + i + 1, n + i, -1)] } else { vec![(n - 1, 2 * n - 1, 1)] })
                    .collect(),
            ),
            _ => return Err(Error::NoClassicalRep(sys.name())),
        };
        let len = sys.len();
        let mut gens: Vec<Option<Matrix<i64>>> = vec![None; len];
        for (i, entries) in simple.into_iter().enumerate() {
            let a = sys.index_of(&Root::simple(n, i)).expect("simple root");
            gens[a] = Some(Matrix::from_entries(&Integers, dim, entries));
        }
        for xi in sys.positive_indices().collect::<Vec<_>>() {
            if let Some((a, b)) = constants.extraspecial(xi) {
                let (xa, xb) = (gens[a].as_ref().unwrap(), gens[b].as_ref().unwrap());
                let m = xa.bracket(&Integers, xb).div_int(&Integers, constants.get(a, b) as i64).expect("integral bracket");
                gens[xi] = Some(m);
            }
        }
        for a in sys.positive_indices().collect::<Vec<_>>() {
            gens[sys.negate_index(a)] = Some(gens[a].as_ref().unwrap().transpose());
        }
        let gens = gens.into_iter().map(|g| g.expect("every root has a matrix")).collect();
        let rep = Self::from_generators(kind, constants, gens);
        rep.check_brackets().map_err(|e| Error::NoClassicalRep(format!("{}: {e}", rep.system().name())))?;
        Ok(rep)
    }

    pub fn build(constants: Arc<StructureConstants>, kind: RepKind) -> Result<Self> {
        match kind {
            RepKind::Adjoint => Ok(Self::adjoint(constants)),
            _ => {
                let r = Self::classical(constants)?;
                if r.kind != kind {
                    return Err(Error::NoClassicalRep(format!("{kind} for {}", r.system().name())));
                }
                Ok(r)
            }
        }
    }

    fn from_generators(kind: RepKind, constants: Arc<StructureConstants>, gens: Vec<Matrix<i64>>) -> Self {
        let dim = gens.first().map(Matrix::dim).unwrap_or(0);
        let mut divided = Vec::with_capacity(gens.len());
        let mut probes = Vec::with_capacity(gens.len());
        for x in gens {
            let mut powers = Vec::new();
            let mut cur = x.clone();
            let mut k = 1;
            while !cur.is_zero() {
                let d = cur.div_int(&Integers, factorial(k)).expect("divided powers are integral");
                powers.push(d);
                cur = cur.mul(&Integers, &x);
                k += 1;
                assert!(k <= dim as i64 + 1, "root generator is not nilpotent");
            }
            let probe = x
                .rows()
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j as usize, *v)))
                .min_by_key(|&(i, j, v)| (v.abs(), i, j))
                .expect("nonzero generator");
            probes.push(probe);
            divided.push(powers);
        }
        let columns = divided.iter().map(|ds| ds.iter().map(Matrix::transpose).collect()).collect();
        Representation { kind, constants, dim, divided, columns, probes }
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &Arc<StructureConstants> {
        &self.constants
    }

    pub fn system(&self) -> &RootSystem {
        self.constants.system()
    }

    /// The nilpotent matrix `X_a` of root index `a`.
    pub fn generator(&self, a: usize) -> &Matrix<i64> {
        &self.divided[a][0]
    }

    /// `X_a^k / k!` for `k >= 1`, zero powers omitted.
    pub fn divided_powers(&self, a: usize) -> &[Matrix<i64>] {
        &self.divided[a]
    }

    /// Transposes of the divided powers of `X_a`, indexed by source column.
    pub(crate) fn column_powers(&self, a: usize) -> &[Matrix<i64>] {
        &self.columns[a]
    }

    pub fn probe(&self, a: usize) -> (usize, usize, i64) {
        self.probes[a]
    }

    /// `x_a(t)` over `ring`.
    pub fn root_element<R: Ring>(&self, ring: &R, a: usize, t: &R::Elem) -> Matrix<R::Elem> {
        let mut m = Matrix::identity(ring, self.dim);
        let mut tk = ring.one();
        for d in &self.divided[a] {
            tk = ring.mul(&tk, t);
            if ring.is_zero(&tk) {
                break;
            }
            m = m.add(ring, &Matrix::from_int(ring, d).scale(ring, &tk));
        }
        m
    }

    /// Apply `x_a(t)` to a sparse column vector.
    pub fn apply_root_element<R: Ring>(&self, ring: &R, a: usize, t: &R::Elem, v: &[(u32, R::Elem)]) -> Vec<(u32, R::Elem)> {
        let mut acc: std::collections::BTreeMap<u32, R::Elem> = v.iter().cloned().collect();
        let mut tk = ring.one();
        for d in &self.columns[a] {
            tk = ring.mul(&tk, t);
            if ring.is_zero(&tk) {
                break;
            }
            for (j, x) in v {
                let coef = ring.mul(&tk, x);
                for (i, c) in d.row(*j as usize) {
                    let add = ring.mul(&coef, &ring.from_int(*c));
                    let e = acc.entry(*i).or_insert_with(|| ring.zero());
                    *e = ring.add(e, &add);
                }
            }
        }
        acc.into_iter().filter(|(_, e)| !ring.is_zero(e)).collect()
    }

    /// `[X_a, X_b] = N[a,b] X_{a+b}`, `[X_a, X_{-a}] = sum_i c_i [X_i, X_{-i}]`
    /// with `a^v = sum_i c_i a_i^v`, and `[X_a, X_b] = 0` otherwise.
    pub fn check_brackets(&self) -> std::result::Result<(), String> {
        let sys = self.system();
        let n = sys.rank();
        let simple = sys.simple_indices();
        let h: Vec<Matrix<i64>> = simple
            .iter()
            .map(|&i| self.generator(i).bracket(&Integers, self.generator(sys.negate_index(i))))
            .collect();
        for a in 0..sys.len() {
            for b in 0..sys.len() {
                let got = self.generator(a).bracket(&Integers, self.generator(b));
                let want = if sys.negate_index(a) == b {
                    sys.coroot_coeffs(sys.root(a))
                        .iter()
                        .enumerate()
                        .fold(Matrix::zero(self.dim), |acc, (i, &c)| acc.add(&Integers, &h[i].scale(&Integers, &(c as i64))))
                } else if let Some(s) = sys.sum_index(a, b) {
                    self.generator(s).scale(&Integers, &(self.constants.get(a, b) as i64))
                } else {
                    Matrix::zero(self.dim)
                };
                if got != want {
                    return Err(format!("bracket of {:?} and {:?} disagrees with the table", sys.root(a), sys.root(b)));
                }
            }
        }
        debug_assert_eq!(h.len(), n);
        Ok(())
    }
}

fn factorial(k: i64) -> i64 {
    (1..=k).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Poly, PolyRing};

    fn rep(s: Series, n: usize, kind: RepKind) -> Representation {
        let c = Arc::new(StructureConstants::new(Arc::new(RootSystem::build(s, n).unwrap())));
        Representation::build(c, kind).unwrap()
    }

    #[test]
    fn adjoint_a1_chevalley_axiom() {
        let r = rep(Series::A, 1, RepKind::Adjoint);
        let sys = r.system();
        let a = sys.index_of(&Root(vec![1])).unwrap();
        let na = sys.negate_index(a);
        // ad e_a (e_{-a}) = h_a = h_1
        assert_eq!(r.generator(a).get(&Integers, sys.len(), na), 1);
        assert_eq!(r.dim(), 3);
    }

    #[test]
    fn one_parameter_subgroups() {
        for (s, n, k) in [(Series::A, 2, RepKind::Adjoint), (Series::G, 2, RepKind::Adjoint), (Series::C, 2, RepKind::Symplectic), (Series::A, 3, RepKind::Natural)] {
            let r = rep(s, n, k);
            let ring = PolyRing;
            let (s_, t) = (Poly::var(0), Poly::var(1));
            for a in 0..r.system().len() {
                let xs = r.root_element(&ring, a, &s_);
                let xt = r.root_element(&ring, a, &t);
                assert_eq!(xs.mul(&ring, &xt), r.root_element(&ring, a, &s_.add(&t)));
                assert!(r.root_element(&ring, a, &Poly::zero()).is_identity(&ring));
            }
        }
    }

    #[test]
    fn classical_reps_match_table() {
        for (s, n) in [(Series::A, 1), (Series::A, 3), (Series::C, 2), (Series::C, 3)] {
            let r = rep(s, n, if s == Series::A { RepKind::Natural } else { RepKind::Symplectic });
            r.check_brackets().unwrap();
        }
        rep(Series::B, 2, RepKind::Adjoint).check_brackets().unwrap();
        let c = Arc::new(StructureConstants::new(Arc::new(RootSystem::build(Series::B, 3).unwrap())));
        assert!(Representation::classical(c).is_err());
    }

    #[test]
    fn symplectic_form_preserved() {
        let r = rep(Series::C, 3, RepKind::Symplectic);
        let n = 3;
        let omega = Matrix::from_entries(&Integers, 6, (0..n).flat_map(|i| [(i, n + i, 1), (n + i, i, -1)]));
        for a in 0..r.system().len() {
            let x = r.root_element(&Integers, a, &3);
            assert_eq!(x.transpose().mul(&Integers, &omega).mul(&Integers, &x), omega);
        }
    }

    #[test]
    fn sparse_application_matches_matrix() {
        let r = rep(Series::B, 2, RepKind::Adjoint);
        for a in 0..r.system().len() {
            let m = r.root_element(&Integers, a, &2);
            for j in 0..r.dim() {
                let v = vec![(j as u32, 1i64)];
                let col: Vec<(u32, i64)> = (0..r.dim()).map(|i| (i as u32, m.get(&Integers, i, j))).filter(|x| x.1 != 0).collect();
                assert_eq!(r.apply_root_element(&Integers, a, &2, &v), col);
            }
        }
    }
}
