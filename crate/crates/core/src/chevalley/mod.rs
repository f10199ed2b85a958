//! Chevalley bases: signed structure constants from extraspecial pairs,
//! integral representations with their root elements, unipotent
//! factorization and verification of the commutator formula.

pub mod commutator;
pub mod factor;
pub mod rep;

use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::rootcore::{Root, RootSystem};

pub use commutator::{verify_commutator_formula, verify_commutator_numeric, CommutatorReport, PairRecord};
pub use factor::factorize_blocks;
pub use rep::{RepKind, Representation};

/// The constants `N[a,b]` of `[e_a, e_b] = N[a,b] e_{a+b}` for a Chevalley
/// basis, normalised so that `N[α,β] = p + 1 > 0` on every extraspecial pair
/// `(α, β)` and `N[-a,-b] = -N[a,b]`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    sys: Arc<RootSystem>,
    table: Vec<i8>,
    extraspecial: Vec<Option<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub a: Root,
    pub b: Root,
    #[serde(rename = "N")]
    pub n: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsJson {
    pub system: String,
    pub pairs: Vec<ConstantEntry>,
    pub convention: String,
}

impl StructureConstants {
    pub fn new(sys: Arc<RootSystem>) -> Self {
        let len = sys.len();
        let mut table = vec![0i8; len * len];
        let mut extraspecial = vec![None; len];
        // positive roots in canonical order, so every smaller height is done
        let positive: Vec<usize> = sys.positive_indices().collect();
        for &xi in &positive {
            let pairs: Vec<(usize, usize)> = positive
                .iter()
                .filter_map(|&g| {
                    let d = sys.diff_index(xi, g)?;
                    sys.root(d).is_positive().then_some((g, d))
                })
                .collect();
            let Some(&(alpha, beta)) = pairs.first() else { continue };
            extraspecial[xi] = Some((alpha, beta));
            let p = sys.string(sys.root(beta), sys.root(alpha)).0;
            table[alpha * len + beta] = (p + 1) as i8;
            table[beta * len + alpha] = -(p + 1) as i8;
            let n_ab = Ratio::from((p + 1) as i64);
            let norm = |i: usize| Ratio::from(sys.norm2(sys.root(i)) as i64);
            for &(g, d) in &pairs {
                if g == alpha || g == beta {
                    continue;
                }
                let na = sys.negate_index(alpha);
                let nb = sys.negate_index(beta);
                let mut acc = Ratio::from(0);
                if let Some(s) = sys.sum_index(d, na) {
                    acc += derive(&sys, &table, d, na) * derive(&sys, &table, g, nb) / norm(s);
                }
                if let Some(s) = sys.sum_index(na, g) {
                    acc += derive(&sys, &table, na, g) * derive(&sys, &table, d, nb) / norm(s);
                }
                let v = acc * norm(xi) / n_ab;
                assert!(v.is_integer(), "non-integral structure constant {v}");
                let v = v.to_integer() as i8;
                table[g * len + d] = v;
                table[d * len + g] = -v;
            }
        }
        for x in 0..len {
            for y in 0..len {
                if sys.sum_index(x, y).is_some() && table[x * len + y] == 0 {
                    let v = derive(&sys, &table, x, y);
                    assert!(v.is_integer(), "non-integral structure constant {v}");
                    table[x * len + y] = v.to_integer() as i8;
                }
            }
        }
        StructureConstants { sys, table, extraspecial }
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn system_arc(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    /// `N[a,b]` by root index; 0 when `a + b` is not a root.
    pub fn get(&self, a: usize, b: usize) -> i32 {
        self.table[a * self.sys.len() + b] as i32
    }

    pub fn n(&self, a: &Root, b: &Root) -> Option<i32> {
        let i = self.sys.index_of(a)?;
        let j = self.sys.index_of(b)?;
        self.sys.sum_index(i, j).map(|_| self.get(i, j))
    }

    /// The extraspecial pair of a non-simple positive root.
    pub fn extraspecial(&self, xi: usize) -> Option<(usize, usize)> {
        self.extraspecial[xi]
    }

    /// All `(a, b, N[a,b])` with `a + b` a root, in index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, i32)> + '_ {
        let len = self.sys.len();
        (0..len * len)
            .filter(move |&k| self.sys.sum_index(k / len, k % len).is_some())
            .map(move |k| (k / len, k % len, self.table[k] as i32))
    }

    pub fn to_json(&self) -> ConstantsJson {
        ConstantsJson {
            system: self.sys.name(),
            pairs: self
                .pairs()
                .map(|(a, b, n)| ConstantEntry { a: self.sys.root(a).clone(), b: self.sys.root(b).clone(), n })
                .collect(),
            convention: "extraspecial".into(),
        }
    }

    /// Dimension of the Lie algebra: roots followed by the simple coroots.
    pub fn lie_dim(&self) -> usize {
        self.sys.len() + self.sys.rank()
    }

    /// Bracket of two Chevalley basis elements (indices below `len` are
    /// `e_a`, the rest `h_i`), as a sparse integer vector.
    pub fn lie_bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let sys = &self.sys;
        let len = sys.len();
        match (x < len, y < len) {
            (true, true) => {
                if sys.negate_index(x) == y {
                    sys.coroot_coeffs(sys.root(x))
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .map(|(i, c)| (len + i, c as i64))
                        .collect()
                } else if let Some(s) = sys.sum_index(x, y) {
                    vec![(s, self.get(x, y) as i64)]
                } else {
                    Vec::new()
                }
            }
            (false, false) => Vec::new(),
            (true, false) => {
                let c = sys.pairing(sys.root(x), &Root::simple(sys.rank(), y - len));
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(x, -c as i64)]
                }
            }
            (false, true) => self.lie_bracket(y, x).into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }

    fn bracket_vec(&self, u: &[(usize, i64)], y: usize) -> Vec<(usize, i64)> {
        let mut acc = std::collections::BTreeMap::new();
        for &(x, c) in u {
            for (k, v) in self.lie_bracket(x, y) {
                *acc.entry(k).or_insert(0) += c * v;
            }
        }
        acc.into_iter().filter(|(_, v)| *v != 0).collect()
    }

    /// Check the table: antisymmetry, `|N[a,b]| = p + 1`, `N[-a,-b] =
    /// -N[a,b]` and the Jacobi identity on every triple of basis elements.
    pub fn check(&self) -> Result<(), String> {
        let sys = &self.sys;
        let len = sys.len();
        for (a, b, n) in self.pairs() {
            if self.get(b, a) != -n {
                return Err(format!("antisymmetry fails at {:?}, {:?}", sys.root(a), sys.root(b)));
            }
            let p = sys.string(sys.root(b), sys.root(a)).0;
            if n.abs() != p + 1 {
                return Err(format!("|N| = {} but p + 1 = {} at {:?}, {:?}", n.abs(), p + 1, sys.root(a), sys.root(b)));
            }
            if self.get(sys.negate_index(a), sys.negate_index(b)) != -n {
                return Err(format!("N[-a,-b] != -N[a,b] at {:?}, {:?}", sys.root(a), sys.root(b)));
            }
        }
        let dim = self.lie_dim();
        for x in 0..dim {
            for y in (x + 1)..dim {
                let xy = self.lie_bracket(x, y);
                if xy.is_empty() && x >= len {
                    continue;
                }
                for z in (y + 1)..dim {
                    // [[x,y],z] + [[y,z],x] + [[z,x],y] = 0
                    let mut total = std::collections::BTreeMap::new();
                    for (k, v) in self
                        .bracket_vec(&xy, z)
                        .into_iter()
                        .chain(self.bracket_vec(&self.lie_bracket(y, z), x))
                        .chain(self.bracket_vec(&self.lie_bracket(z, x), y))
                    {
                        *total.entry(k).or_insert(0i64) += v;
                    }
                    if total.values().any(|v| *v != 0) {
                        return Err(format!("Jacobi fails on basis elements {x}, {y}, {z}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `N[x,y]` from the positive entries computed so far, through
/// `N[-a,-b] = -N[a,b]` and `N[x,y]/(z,z) = N[y,z]/(x,x)` for `x+y+z = 0`.
fn derive(sys: &RootSystem, table: &[i8], x: usize, y: usize) -> Ratio<i64> {
    let len = sys.len();
    let Some(s) = sys.sum_index(x, y) else { return Ratio::from(0) };
    let (rx, ry) = (sys.root(x), sys.root(y));
    match (rx.is_positive(), ry.is_positive()) {
        (true, true) => Ratio::from(table[x * len + y] as i64),
        (false, false) => -derive(sys, table, sys.negate_index(x), sys.negate_index(y)),
        _ if sys.root(s).is_negative() => -derive(sys, table, sys.negate_index(x), sys.negate_index(y)),
        (false, true) => -derive(sys, table, y, x),
        (true, false) => {
            let z = sys.negate_index(s);
            Ratio::new(sys.norm2(sys.root(z)) as i64, sys.norm2(rx) as i64) * derive(sys, table, y, z)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::Series;

    fn constants(s: Series, n: usize) -> StructureConstants {
        StructureConstants::new(Arc::new(RootSystem::build(s, n).unwrap()))
    }

    #[test]
    fn tables_satisfy_jacobi() {
        for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::A, 3), (Series::B, 2), (Series::B, 3), (Series::C, 3), (Series::D, 4), (Series::G, 2), (Series::F, 4)] {
            let c = constants(s, n);
            c.check().unwrap_or_else(|e| panic!("{s:?}{n}: {e}"));
        }
    }

    #[test]
    fn constant_values() {
        let a2 = constants(Series::A, 2);
        let r = |v: &[i32]| Root(v.to_vec());
        assert_eq!(a2.n(&r(&[1, 0]), &r(&[0, 1])).map(i32::abs), Some(1));
        assert_eq!(a2.n(&r(&[1, 0]), &r(&[1, 0])), None);
        let g2 = constants(Series::G, 2);
        assert!(g2.pairs().any(|(_, _, n)| n.abs() == 3));
        let c2 = constants(Series::C, 2);
        assert!(c2.pairs().any(|(_, _, n)| n.abs() == 2));
        // extraspecial pairs are positive
        for xi in a2.system().positive_indices() {
            if let Some((a, b)) = a2.extraspecial(xi) {
                assert!(a2.get(a, b) > 0);
            }
        }
        let json = a2.to_json();
        assert_eq!(json.convention, "extraspecial");
        assert_eq!(json.pairs.len(), 12);
    }
}
