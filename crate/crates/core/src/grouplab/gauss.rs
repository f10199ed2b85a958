//! Gauss decomposition `E = U U^- T U` and the word diameter of `E` with
//! respect to the unipotent radicals `U_P ∪ U_{P^-}`.

use serde::{Deserialize, Serialize};

use super::{LabCase, Subgroup, MAX_DIM};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussReport {
    pub case: String,
    pub order: usize,
    pub unipotent_order: usize,
    pub opposite_order: usize,
    pub torus_order: usize,
    /// Elements lying in `U U^- T U`.
    pub gauss_members: usize,
    /// Maximal number of factors from `U_P ∪ U_{P^-}` needed.
    pub diameter: usize,
    /// Number of elements at each word length, starting with the identity.
    pub layers: Vec<usize>,
}

impl GaussReport {
    pub fn gauss_holds(&self) -> bool {
        self.gauss_members == self.order
    }
}

/// `U_P(R)` for the positive relative roots, or `U_{P^-}(R)` for the negative ones.
pub fn unipotent_radical(lab: &LabCase, positive: bool) -> Subgroup {
    let sys = lab.case().system();
    let unit = lab.ring().unit_ideal();
    let seeds: Vec<u32> = (0..sys.len())
        .filter(|&a| (sys.height(a) > 0) == positive)
        .flat_map(|a| lab.root_elements(a, &unit).into_iter().map(|(_, e)| e))
        .collect();
    lab.group().closure(&seeds)
}

/// Diagonal elements of `E`, the torus of the classical representation.
pub fn torus(lab: &LabCase) -> Subgroup {
    let g = lab.group();
    let n = g.dim();
    g.subset((0..g.len() as u32).filter(|&i| {
        let m = g.element(i);
        (0..n).all(|r| (0..n).all(|c| r == c || m[r * MAX_DIM + c] == 0))
    }))
}

pub fn gauss_and_diameter(lab: &LabCase) -> Result<GaussReport> {
    if !lab.ring().is_local() {
        return Err(Error::Precondition(format!("{} is not local", lab.ring().name())));
    }
    let g = lab.group();
    let u = unipotent_radical(lab, true);
    let um = unipotent_radical(lab, false);
    let t = torus(lab);

    // the big cell U^- T U as a membership table
    let mut cell = vec![false; g.len()];
    for &x in um.elements() {
        for &y in t.elements() {
            let xy = g.mul(x, y);
            for &z in u.elements() {
                cell[g.mul(xy, z) as usize] = true;
            }
        }
    }
    let u_inv: Vec<u32> = u.elements().iter().map(|&x| g.inverse(x)).collect();
    let gauss_members =
        (0..g.len() as u32).filter(|&e| u_inv.iter().any(|&v| cell[g.mul(v, e) as usize])).count();

    let steps: Vec<u32> = u.elements().iter().chain(um.elements()).copied().filter(|&x| x != 0).collect();
    let mut dist = vec![u32::MAX; g.len()];
    dist[0] = 0;
    let mut frontier = vec![0u32];
    let mut layers = vec![1];
    while !frontier.is_empty() {
        let d = layers.len() as u32;
        let mut next = Vec::new();
        for &x in &frontier {
            for &s in &steps {
                let y = g.mul(x, s);
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = d;
                    next.push(y);
                }
            }
        }
        if !next.is_empty() {
            layers.push(next.len());
        }
        frontier = next;
    }
    Ok(GaussReport {
        case: lab.name(),
        order: g.len(),
        unipotent_order: u.len(),
        opposite_order: um.len(),
        torus_order: t.len(),
        gauss_members,
        diameter: layers.len() - 1,
        layers,
    })
}
