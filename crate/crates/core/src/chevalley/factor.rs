//! Factorization of unipotent matrices into ordered products of root
//! elements.
//!
//! The roots come in blocks of equal level for some additive functional
//! that is positive on all of them, blocks in increasing level. Within a
//! block any order is allowed: modulo higher levels the block's factors
//! commute, so the coordinate of `x_c` is read off a single entry of the
//! matrix (an entry where `X_c` is nonzero), then the block is divided out
//! on the left.

use super::Representation;
use crate::algebra::{Matrix, Ring};
use crate::error::{Error, Result};

/// Coordinates `t_c` with `m = prod_blocks prod_{c in block} x_c(t_c)`.
pub fn factorize_blocks<R: Ring>(
    rep: &Representation,
    ring: &R,
    m: &Matrix<R::Elem>,
    blocks: &[Vec<usize>],
) -> Result<Vec<Vec<R::Elem>>> {
    let mut cur = m.clone();
    let mut out = Vec::with_capacity(blocks.len());
    for block in blocks {
        let mut coords = Vec::with_capacity(block.len());
        for &c in block {
            let (r, col, v) = rep.probe(c);
            let t = ring.div_int(&cur.get(ring, r, col), v).ok_or_else(|| {
                Error::Factorization(format!("coordinate of {:?} is not determined", rep.system().root(c)))
            })?;
            coords.push(t);
        }
        // (x_1 ... x_k)^{-1} = x_k^{-1} ... x_1^{-1}
        let mut peel = Matrix::identity(ring, rep.dim());
        for (&c, t) in block.iter().zip(&coords).rev() {
            if !ring.is_zero(t) {
                peel = peel.mul(ring, &rep.root_element(ring, c, &ring.neg(t)));
            }
        }
        cur = peel.mul(ring, &cur);
        out.push(coords);
    }
    if !cur.is_identity(ring) {
        return Err(Error::Factorization("matrix is not in the product of the given root subgroups".into()));
    }
    Ok(out)
}

/// Product `prod_blocks prod_{c in block} x_c(t_c)`.
pub fn multiply_blocks<R: Ring>(
    rep: &Representation,
    ring: &R,
    blocks: &[Vec<usize>],
    coords: &[Vec<R::Elem>],
) -> Matrix<R::Elem> {
    let mut m = Matrix::identity(ring, rep.dim());
    for (block, ts) in blocks.iter().zip(coords) {
        for (&c, t) in block.iter().zip(ts) {
            if !ring.is_zero(t) {
                m = m.mul(ring, &rep.root_element(ring, c, t));
            }
        }
    }
    m
}

/// Group root indices into blocks by `level`, increasing; roots keep their
/// relative order inside a block. Fails if some level is not positive.
pub fn blocks_by_level(roots: &[usize], level: impl Fn(usize) -> i64) -> Result<Vec<Vec<usize>>> {
    let mut levels: Vec<(i64, usize)> = roots.iter().map(|&c| (level(c), c)).collect();
    if let Some(&(l, _)) = levels.iter().find(|(l, _)| *l <= 0) {
        return Err(Error::Factorization(format!("level {l} is not positive")));
    }
    levels.sort_by_key(|&(l, _)| l);
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for (l, c) in levels {
        if last != Some(l) {
            out.push(Vec::new());
            last = Some(l);
        }
        out.last_mut().unwrap().push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{Poly, PolyRing};
    use crate::chevalley::{RepKind, StructureConstants};
    use crate::rootcore::{RootSystem, Series};

    #[test]
    fn round_trip_a2_and_g2() {
        for (s, n, k) in [(Series::A, 2, RepKind::Adjoint), (Series::A, 2, RepKind::Natural), (Series::G, 2, RepKind::Adjoint), (Series::C, 2, RepKind::Symplectic)] {
            let c = Arc::new(StructureConstants::new(Arc::new(RootSystem::build(s, n).unwrap())));
            let rep = Representation::build(c, k).unwrap();
            let sys = rep.system();
            let pos: Vec<usize> = sys.positive_indices().collect();
            let blocks = blocks_by_level(&pos, |c| sys.root(c).height() as i64).unwrap();
            let mut v = 0;
            let coords: Vec<Vec<Poly>> = blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|_| {
                            v += 1;
                            Poly::var(v - 1)
                        })
                        .collect()
                })
                .collect();
            let m = multiply_blocks(&rep, &PolyRing, &blocks, &coords);
            assert_eq!(factorize_blocks(&rep, &PolyRing, &m, &blocks).unwrap(), coords);
            let id = Matrix::identity(&PolyRing, rep.dim());
            assert!(factorize_blocks(&rep, &PolyRing, &id, &blocks).unwrap().iter().flatten().all(Poly::is_zero));
            // a negative root element is not in the positive unipotent
            let neg = rep.root_element(&PolyRing, sys.negate_index(pos[0]), &Poly::constant(1));
            assert!(factorize_blocks(&rep, &PolyRing, &neg, &blocks).is_err());
        }
    }
}
