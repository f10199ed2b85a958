use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// A permutation of the simple roots, `p[i]` is the image of `a_i`.
pub type Perm = Vec<usize>;

pub fn compose(p: &Perm, q: &Perm) -> Perm {
    // (p ∘ q)(i) = p(q(i))
    q.iter().map(|&i| p[i]).collect()
}

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// A group of Dynkin diagram automorphisms, stored as a sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramAutGroup {
    rank: usize,
    elements: Vec<Perm>,
}

impl DiagramAutGroup {
    /// All permutations `s` with `A[s(i)][s(j)] = A[i][j]`, found by
    /// backtracking over partial assignments.
    pub fn of_cartan(cartan: &[Vec<i32>]) -> Self {
        let n = cartan.len();
        let mut out = Vec::new();
        let mut partial = Vec::with_capacity(n);
        let mut used = vec![false; n];
        extend(cartan, &mut partial, &mut used, &mut out);
        out.sort();
        DiagramAutGroup { rank: n, elements: out }
    }

    pub fn trivial(rank: usize) -> Self {
        DiagramAutGroup { rank, elements: vec![identity(rank)] }
    }

    /// Subgroup generated by the given permutations.
    pub fn generated_by(rank: usize, gens: &[Perm]) -> Self {
        let mut set: BTreeSet<Perm> = BTreeSet::new();
        set.insert(identity(rank));
        let mut frontier = vec![identity(rank)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = compose(g, &x);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        DiagramAutGroup { rank, elements: set.into_iter().collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &DiagramAutGroup) -> bool {
        self.elements.iter().all(|p| other.contains(p))
    }

    /// Every subgroup, obtained by repeatedly adjoining one element to a
    /// known subgroup. Sorted by order, then by element list.
    pub fn subgroups(&self) -> Vec<DiagramAutGroup> {
        let mut found: BTreeSet<DiagramAutGroup> = BTreeSet::new();
        let start = DiagramAutGroup::trivial(self.rank);
        let mut queue = vec![start.clone()];
        found.insert(start);
        while let Some(h) = queue.pop() {
            for g in &self.elements {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.elements.clone();
                gens.push(g.clone());
                let k = DiagramAutGroup::generated_by(self.rank, &gens);
                if found.insert(k.clone()) {
                    queue.push(k);
                }
            }
        }
        let mut out: Vec<_> = found.into_iter().collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        out
    }

    /// Orbits of the group on `0..rank`, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.rank];
        let mut out = Vec::new();
        for i in 0..self.rank {
            if seen[i] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.elements.iter().map(|p| p[i]).collect();
            for &j in &orbit {
                seen[j] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    /// Whether a set of simple-root indices is invariant.
    pub fn preserves(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        self.elements.iter().all(|p| s.iter().all(|&i| s.contains(&p[i])))
    }
}

fn extend(cartan: &[Vec<i32>], partial: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
    let n = cartan.len();
    let k = partial.len();
    if k == n {
        out.push(partial.clone());
        return;
    }
    for cand in 0..n {
        if used[cand] || cartan[cand][cand] != cartan[k][k] {
            continue;
        }
        let consistent = (0..k).all(|i| {
            cartan[partial[i]][cand] == cartan[i][k] && cartan[cand][partial[i]] == cartan[k][i]
        });
        if consistent {
            used[cand] = true;
            partial.push(cand);
            extend(cartan, partial, used, out);
            partial.pop();
            used[cand] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::RootSystem;

    fn aut(name: &str) -> DiagramAutGroup {
        RootSystem::from_name(name).unwrap().automorphisms()
    }

    /// Heap's algorithm, independent of the backtracking search.
    fn all_perms(n: usize) -> Vec<Perm> {
        fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Perm>) {
            if k <= 1 {
                out.push(a.clone());
                return;
            }
            for i in 0..k - 1 {
                heap(k - 1, a, out);
                if k % 2 == 0 {
                    a.swap(i, k - 1);
                } else {
                    a.swap(0, k - 1);
                }
            }
            heap(k - 1, a, out);
        }
        let mut a = identity(n);
        let mut out = Vec::new();
        heap(n, &mut a, &mut out);
        out
    }

    #[test]
    fn orders() {
        assert_eq!(aut("A2").order(), 2);
        assert_eq!(aut("D4").order(), 6);
        assert_eq!(aut("B2").order(), 1);
        assert_eq!(aut("E6").order(), 2);
        assert_eq!(aut("E7").order(), 1);
        assert_eq!(aut("D5").order(), 2);
        assert_eq!(aut("A1").order(), 1);
    }

    #[test]
    fn exhaustive_scan_matches_rank_le_4() {
        for (s, n) in crate::rootcore::Series::all_types(4) {
            let sys = RootSystem::build(s, n).unwrap();
            let a = sys.cartan();
            let brute: BTreeSet<Perm> = all_perms(n)
                .into_iter()
                .filter(|p| (0..n).all(|i| (0..n).all(|j| a[p[i]][p[j]] == a[i][j])))
                .collect();
            let got: BTreeSet<Perm> = sys.automorphisms().elements().iter().cloned().collect();
            assert_eq!(brute, got, "{s}{n}");
        }
    }

    #[test]
    fn subgroup_lattices() {
        let d4 = aut("D4").subgroups();
        // S3: trivial, three of order 2, one of order 3, whole group
        let orders: Vec<usize> = d4.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(aut("A5").subgroups().len(), 2);
        assert_eq!(aut("G2").subgroups().len(), 1);
    }

    #[test]
    fn closure_under_composition() {
        let g = aut("D4");
        for p in g.elements() {
            let mut inv = vec![0; p.len()];
            for (i, &j) in p.iter().enumerate() {
                inv[j] = i;
            }
            assert!(g.contains(&inv));
            for q in g.elements() {
                assert!(g.contains(&compose(p, q)));
            }
        }
    }

    #[test]
    fn orbits_of_swap() {
        let g = aut("A3");
        assert_eq!(g.orbits(), vec![vec![0, 2], vec![1]]);
        assert!(g.preserves(&[0, 2]));
        assert!(!g.preserves(&[0, 1]));
    }
}
