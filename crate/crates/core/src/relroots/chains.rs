//! Chains of relative roots: special chains, chains up to the maximal
//! relative root, the explicit chain from the maximal root to its negative,
//! and rebasing of absolute-root sequences along a fiber.

use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::Ratio;
use serde::Serialize;

use super::{RelativeRoot, RelativeRootSystem};
use crate::error::{Error, Result};
use crate::rootcore::Root;

/// Fixed-width bitset over relative-root indices.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

fn require_chain_preconditions(sys: &RelativeRootSystem) -> Result<()> {
    if sys.rank() < 2 {
        return Err(Error::Precondition(format!("relative rank {} < 2", sys.rank())));
    }
    if !sys.is_irreducible() {
        return Err(Error::Precondition("relative root system is not irreducible".into()));
    }
    Ok(())
}

/// Whether `next` is minimal with respect to the simple relative roots in
/// `{k p + l b : k, l > 0} ∩ Φ_{J,Γ}`.
fn minimal_in_span(sys: &RelativeRootSystem, p: usize, b: usize, next: usize) -> bool {
    let span = sys.pair_bracket(p, b);
    sys.simple_indices().iter().all(|&s| {
        let lower = sys.element(next).sub(sys.element(s));
        sys.index_of(&lower).map_or(true, |k| span.binary_search(&k).is_err())
    })
}

/// A special chain between `delta` and `gamma` (indices into `sys`), found
/// by breadth-first search. Among the shortest chains the
/// lexicographically smallest in canonical order is returned. Returns
/// `None` when no chain exists.
pub fn find_special_chain(sys: &RelativeRootSystem, delta: usize, gamma: usize) -> Result<Option<Vec<usize>>> {
    require_chain_preconditions(sys)?;
    if delta == gamma {
        return Ok(Some(Vec::new()));
    }
    let diff = sys.element(gamma).sub(sys.element(delta));
    if diff.0.iter().all(|&c| c >= 0) {
        return Ok(positive_search(sys, delta, gamma));
    }
    if diff.0.iter().all(|&c| c <= 0) {
        let (nd, ng) = (sys.neg_index(delta), sys.neg_index(gamma));
        return Ok(positive_search(sys, nd, ng).map(|c| c.into_iter().map(|b| sys.neg_index(b)).collect()));
    }
    Ok(None)
}

fn positive_search(sys: &RelativeRootSystem, delta: usize, gamma: usize) -> Option<Vec<usize>> {
    let n = sys.len();
    let positives = sys.positive_indices();
    let target = sys.element(gamma).clone();
    let mut start_set = Bits::new(n);
    start_set.insert(delta);
    // state: (partial sum, nested bracket set)
    let mut seen: HashSet<(usize, Bits)> = HashSet::new();
    let mut queue: VecDeque<(usize, Bits, Vec<usize>)> = VecDeque::new();
    seen.insert((delta, start_set.clone()));
    queue.push_back((delta, start_set, Vec::new()));
    while let Some((p, set, path)) = queue.pop_front() {
        for &b in &positives {
            let Some(next) = sys.sum_index(p, b) else { continue };
            let rest = target.sub(sys.element(next));
            if rest.0.iter().any(|&c| c < 0) {
                continue;
            }
            if set.iter().any(|x| sys.opposite(x, b)) {
                continue;
            }
            if !minimal_in_span(sys, p, b, next) {
                continue;
            }
            let mut nset = Bits::new(n);
            for x in set.iter() {
                for t in sys.pair_bracket(x, b) {
                    nset.insert(t);
                }
            }
            let mut npath = path.clone();
            npath.push(b);
            if next == gamma {
                return Some(npath);
            }
            if seen.insert((next, nset.clone())) {
                queue.push_back((next, nset, npath));
            }
        }
    }
    None
}

/// Independent check of the special-chain conditions, using exact rational
/// elimination instead of the cached bracket tables. Returns a description
/// of the first violated condition.
pub fn is_special_chain(
    sys: &RelativeRootSystem,
    delta: &RelativeRoot,
    gamma: &RelativeRoot,
    chain: &[RelativeRoot],
) -> std::result::Result<(), String> {
    if chain.is_empty() {
        return if delta == gamma { Ok(()) } else { Err("empty chain between distinct roots".into()) };
    }
    if chain.iter().all(|b| b.is_negative()) {
        let neg: Vec<RelativeRoot> = chain.iter().map(|b| b.neg()).collect();
        return is_special_chain(sys, &delta.neg(), &gamma.neg(), &neg);
    }
    if let Some(b) = chain.iter().find(|b| !b.is_positive()) {
        return Err(format!("{b:?} is not positive (and the chain is not all negative)"));
    }
    let roots = sys.elements();
    let mut partials = vec![delta.clone()];
    for b in chain {
        partials.push(partials.last().unwrap().add(b));
    }
    if partials.last().unwrap() != gamma {
        return Err(format!("chain ends at {:?}, not {gamma:?}", partials.last().unwrap()));
    }
    for p in &partials {
        if !sys.contains(p) {
            return Err(format!("partial sum {p:?} is not a relative root"));
        }
    }
    let mut nested: Vec<RelativeRoot> = vec![delta.clone()];
    for (i, b) in chain.iter().enumerate() {
        if let Some(x) = nested.iter().find(|x| solve_positive(b, x, &vec![0; b.0.len()]).is_some()) {
            return Err(format!("step {}: {x:?} and {b:?} are opposite multiples", i + 1));
        }
        nested = roots.iter().filter(|t| nested.iter().any(|x| solve_positive(x, b, &t.0).is_some())).cloned().collect();
        let span: Vec<&RelativeRoot> =
            roots.iter().filter(|t| solve_positive(&partials[i], b, &t.0).is_some()).collect();
        let next = &partials[i + 1];
        let rank = next.0.len();
        for s in 0..rank {
            let lower = next.sub(&RelativeRoot::unit(rank, s));
            if span.contains(&&lower) {
                return Err(format!("step {}: {next:?} is not minimal, {lower:?} is smaller", i + 1));
            }
        }
    }
    Ok(())
}

/// Positive integers `(i, j)` with `i x + j y = t`, by Gaussian elimination
/// over the rationals on the `n x 2` system (dependent columns handled by a
/// bounded scan).
fn solve_positive(x: &RelativeRoot, y: &RelativeRoot, t: &[i32]) -> Option<(i64, i64)> {
    let n = t.len();
    let mut rows: Vec<[Ratio<i64>; 3]> = (0..n)
        .map(|r| [Ratio::from(x.0[r] as i64), Ratio::from(y.0[r] as i64), Ratio::from(t[r] as i64)])
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..2 {
        let Some(pr) = (row..n).find(|&r| rows[r][col] != Ratio::from(0)) else { continue };
        rows.swap(row, pr);
        let inv = Ratio::from(1) / rows[row][col];
        for c in 0..3 {
            rows[row][c] *= inv;
        }
        for r in 0..n {
            if r != row && rows[r][col] != Ratio::from(0) {
                let f = rows[r][col];
                for c in 0..3 {
                    let v = rows[row][c];
                    rows[r][c] -= f * v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| r[2] != Ratio::from(0)) {
        return None;
    }
    if pivots.len() == 2 {
        let (i, j) = (rows[0][2], rows[1][2]);
        return (i.is_integer() && j.is_integer() && i > Ratio::from(0) && j > Ratio::from(0))
            .then(|| (i.to_integer(), j.to_integer()));
    }
    // x and y are proportional: t = i x + j y with y = c x; scan i
    let c = rows[0][1];
    let s = rows[0][2];
    let bound = 64;
    (1..=bound).find_map(|i| {
        let j = (s - Ratio::from(i)) / c;
        (j.is_integer() && j > Ratio::from(0)).then(|| (i, j.to_integer()))
    })
}

/// Shortest chain `α_1, ..., α_n` of positive relative roots from `α0` to
/// the highest relative root with every partial sum a relative root and no
/// partial sum opposite-proportional to the next step. For positive `α0`
/// all steps are simple; for negative `α0` the first step is linearly
/// independent of `α0`. Ties are broken lexicographically in canonical order.
pub fn chain_to_max(sys: &RelativeRootSystem, alpha0: usize) -> Result<Vec<usize>> {
    let table = ChainToMax::new(sys)?;
    table.chain(sys, alpha0)
}

/// Distances to the highest relative root, reusable across starting roots.
pub struct ChainToMax {
    top: usize,
    dist_any: Vec<Option<u32>>,
    dist_simple: Vec<Option<u32>>,
}

impl ChainToMax {
    pub fn new(sys: &RelativeRootSystem) -> Result<Self> {
        require_chain_preconditions(sys)?;
        let top = sys.highest();
        let positives = sys.positive_indices();
        let simple = sys.simple_indices().to_vec();
        let dist_any = reverse_distances(sys, top, &positives);
        let dist_simple = reverse_distances(sys, top, &simple);
        Ok(ChainToMax { top, dist_any, dist_simple })
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn chain(&self, sys: &RelativeRootSystem, alpha0: usize) -> Result<Vec<usize>> {
        let positive = sys.element(alpha0).is_positive();
        let (steps, dist): (Vec<usize>, &Vec<Option<u32>>) = if positive {
            (sys.simple_indices().to_vec(), &self.dist_simple)
        } else {
            (sys.positive_indices(), &self.dist_any)
        };
        let step_ok = |p: usize, b: usize| sys.sum_index(p, b).filter(|_| !sys.opposite(p, b));
        let mut out = Vec::new();
        let mut p = alpha0;
        if !positive && p != self.top {
            let first = steps
                .iter()
                .filter(|&&b| sys.independent(alpha0, b))
                .filter_map(|&b| step_ok(p, b).and_then(|q| dist[q].map(|d| (d, b, q))))
                .min_by_key(|&(d, b, _)| (d, b));
            let Some((_, b, q)) = first else {
                return Err(Error::Precondition(format!(
                    "no independent first step from {:?}",
                    sys.element(alpha0)
                )));
            };
            out.push(b);
            p = q;
        }
        while p != self.top {
            let Some(d) = dist[p] else {
                return Err(Error::Precondition(format!("{:?} cannot reach the maximal root", sys.element(p))));
            };
            let (b, q) = steps
                .iter()
                .find_map(|&b| step_ok(p, b).filter(|&q| dist[q] == Some(d - 1)).map(|q| (b, q)))
                .expect("distance table is consistent");
            out.push(b);
            p = q;
        }
        Ok(out)
    }
}

fn reverse_distances(sys: &RelativeRootSystem, top: usize, steps: &[usize]) -> Vec<Option<u32>> {
    let mut dist = vec![None; sys.len()];
    dist[top] = Some(0);
    let mut queue = VecDeque::from([top]);
    while let Some(q) = queue.pop_front() {
        let d = dist[q].unwrap();
        for &b in steps {
            // predecessor p = q - b must be a root with p + b = q allowed
            let Some(p) = sys.index_of(&sys.element(q).sub(sys.element(b))) else { continue };
            if dist[p].is_none() && !sys.opposite(p, b) {
                dist[p] = Some(d + 1);
                queue.push_back(p);
            }
        }
    }
    dist
}

/// Independent check of a chain from `alpha0` up to the highest relative root.
pub fn check_chain_to_max(
    sys: &RelativeRootSystem,
    alpha0: &RelativeRoot,
    top: &RelativeRoot,
    chain: &[RelativeRoot],
) -> std::result::Result<(), String> {
    let mut p = alpha0.clone();
    for (i, b) in chain.iter().enumerate() {
        if !b.is_positive() {
            return Err(format!("step {} = {b:?} is not positive", i + 1));
        }
        if alpha0.is_positive() && b.height() != 1 {
            return Err(format!("step {} = {b:?} is not simple although α0 is positive", i + 1));
        }
        if i == 0 && alpha0.is_negative() && solve_positive(alpha0, b, &vec![0; b.0.len()]).is_some() {
            return Err("first step is proportional to α0".into());
        }
        if i == 0 && alpha0.is_negative() {
            let dep = (0..b.0.len())
                .all(|r| (0..b.0.len()).all(|s| alpha0.0[r] * b.0[s] == alpha0.0[s] * b.0[r]));
            if dep {
                return Err("first step is linearly dependent on α0".into());
            }
        }
        if solve_positive(&p, b, &vec![0; b.0.len()]).is_some() {
            return Err(format!("step {}: {p:?} and {b:?} are opposite multiples", i + 1));
        }
        p = p.add(b);
        if !sys.contains(&p) {
            return Err(format!("partial sum {p:?} is not a relative root"));
        }
    }
    if &p != top {
        return Err(format!("chain ends at {p:?}, not {top:?}"));
    }
    Ok(())
}

/// Which alternative of the maximal-root chain construction occurs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainCase {
    A,
    B,
}

/// The explicit special chain between `α̃` and `-α̃`.
#[derive(Clone, Debug, Serialize)]
pub struct MaxChain {
    /// Absolute highest root `ã`.
    pub top_root: Root,
    /// Positive root `s` with `π(s) = σ` simple and `ã - s` positive.
    pub s: Root,
    pub sigma: RelativeRoot,
    pub case: ChainCase,
    /// Largest `k` with `α̃ - kσ` a relative root.
    pub k: i32,
    pub chain: Vec<RelativeRoot>,
    /// Absolute roots `a_i` over the chain with all partial sums
    /// `ã + a_1 + ... + a_i` roots and total `-ã`.
    pub witnesses: Vec<Root>,
    /// Stated bracket identities that do not hold for this `σ`.
    pub discrepancies: Vec<String>,
}

/// Build the chain between `α̃` and `-α̃` from the extended Dynkin diagram,
/// verifying every identity of the construction. A failed identity is
/// returned as an error carrying the offending data.
pub fn construct_chain_max(sys: &RelativeRootSystem) -> Result<MaxChain> {
    require_chain_preconditions(sys)?;
    let base = sys.base();
    let top_rel = sys.highest();
    let alpha = sys.element(top_rel).clone();
    // a maximal root of Φ over α̃; with Γ permuting components any of them
    // will do, take the first component.
    let top_root = base
        .highest_roots()
        .into_iter()
        .find(|r| sys.project(r).as_ref() == Some(&alpha))
        .ok_or_else(|| Error::Precondition("no maximal root lies over α̃".into()))?;
    let comp = base.component_of(&top_root).unwrap();
    let comp_idx = base.components().iter().position(|c| c.offset == comp).unwrap();
    let diagram = base.extended_diagram();
    let n = base.rank();
    let low = n + comp_idx;
    // BFS from the lowest-root node, stopping at the nearest J node
    let mut prev = vec![usize::MAX; diagram.nodes.len()];
    let mut dist = vec![usize::MAX; diagram.nodes.len()];
    dist[low] = 0;
    let mut queue = VecDeque::from([low]);
    while let Some(v) = queue.pop_front() {
        for w in 0..n {
            if diagram.adjacent(v, w) && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let j = sys.spec().j();
    let nearest = j.iter().filter(|&&i| dist[i] != usize::MAX).map(|&i| dist[i]).min();
    let nearest = nearest.ok_or_else(|| Error::Precondition("J does not meet the component of ã".into()))?;
    // ties: the first candidate satisfying every stated identity, otherwise
    // the first that yields a chain at all
    let mut fallback: Option<Result<MaxChain>> = None;
    for &s0 in j.iter().filter(|&&i| dist[i] == nearest) {
        let attempt = chain_from_node(sys, &top_root, &alpha, s0, low, &prev);
        match &attempt {
            Ok(m) if m.discrepancies.is_empty() => return attempt,
            Ok(_) if !matches!(fallback, Some(Ok(_))) => fallback = Some(attempt),
            Err(_) if fallback.is_none() => fallback = Some(attempt),
            _ => {}
        }
    }
    fallback.expect("at least one candidate")
}

fn chain_from_node(
    sys: &RelativeRootSystem,
    top_root: &Root,
    alpha: &RelativeRoot,
    s0: usize,
    low: usize,
    prev: &[usize],
) -> Result<MaxChain> {
    let base = sys.base();
    let n = base.rank();
    let mut s = Root::zero(n);
    let mut v = s0;
    while v != low {
        s.0[v] += 1;
        v = prev[v];
    }
    let fail = |msg: String| Error::Precondition(format!("maximal-root chain: {msg}"));
    if !base.contains(&s) {
        return Err(fail(format!("path sum {s:?} is not a root")));
    }
    let rest = top_root.sub(&s);
    if !(base.contains(&rest) && rest.is_positive()) {
        return Err(fail(format!("ã - s = {rest:?} is not a positive root")));
    }
    let sigma = sys.project(&s).ok_or_else(|| fail("π(s) = 0".into()))?;
    if sigma.height() != 1 {
        return Err(fail(format!("σ = {sigma:?} is not simple")));
    }
    let mut k = 1;
    while sys.contains(&alpha.sub(&sigma.scale(k + 1))) {
        k += 1;
    }
    let idx = |r: &RelativeRoot| sys.index_of(r).ok_or_else(|| fail(format!("{r:?} is not a relative root")));
    let set_of = |rs: &[RelativeRoot]| -> Result<Vec<usize>> {
        let mut v: Vec<usize> = rs.iter().map(idx).collect::<Result<_>>()?;
        v.sort_unstable();
        v.dedup();
        Ok(v)
    };
    let mut discrepancies = Vec::new();
    if k >= 2 && sys.contains(&sigma.scale(k + 1)) {
        discrepancies.push(format!("{}σ is a relative root", k + 1));
    }
    let mut expect = |got: Vec<usize>, want: Vec<usize>, what: &str| {
        if got != want {
            let show = |v: &[usize]| v.iter().map(|&i| sys.element(i).clone()).collect::<Vec<_>>();
            discrepancies.push(format!("{what}: got {:?}, expected {:?}", show(&got), show(&want)));
        }
    };
    let br = |a: &[usize], b: &[usize]| sys.bracket(a, b).into_iter().collect::<Vec<usize>>();
    let a_i = idx(&alpha)?;
    let s_i = idx(&sigma)?;
    let ns_i = sys.neg_index(s_i);
    let chain = if k == 1 {
        let plane: Vec<usize> = (0..sys.len()).filter(|&t| in_plane(sys.element(t), &alpha, &sigma)).collect();
        let am = alpha.sub(&sigma);
        let want = set_of(&[alpha.clone(), alpha.neg(), sigma.clone(), sigma.neg(), am.clone(), am.neg()])?;
        expect(plane, want, "(Zα̃ + Zσ) ∩ Φ");
        expect(br(&[a_i], &[ns_i]), set_of(&[am.clone()])?, "[α̃, -σ]");
        expect(br(&[idx(&am)?], &[sys.neg_index(a_i)]), set_of(&[sigma.neg()])?, "[α̃-σ, -α̃]");
        expect(br(&[ns_i], &[idx(&am.neg())?]), set_of(&[alpha.neg()])?, "[-σ, -α̃+σ]");
        vec![sigma.neg(), alpha.neg(), am.neg()]
    } else {
        let km1 = sigma.scale(k - 1);
        if !sys.contains(&km1) {
            return Err(fail(format!("(k-1)σ = {km1:?} is not a relative root")));
        }
        let down: Vec<RelativeRoot> = (1..=k).map(|i| alpha.sub(&sigma.scale(i))).collect();
        let first = br(&[a_i], &[ns_i]);
        expect(first.clone(), set_of(&down)?, "[α̃, -σ]");
        let akm = alpha.sub(&sigma.scale(k));
        expect(br(&first, &[idx(&km1.neg())?]), set_of(&[akm.clone()])?, "[[α̃, -σ], -(k-1)σ]");
        let minus_am = alpha.neg().add(&sigma);
        let mut want = vec![km1.neg()];
        if k == 2 {
            want.push(alpha.neg());
        }
        let third = br(&[idx(&akm)?], &[idx(&minus_am)?]);
        expect(third.clone(), set_of(&want)?, "[α̃-kσ, -α̃+σ]");
        let last = alpha.neg().add(&km1);
        expect(br(&third, &[idx(&last)?]), set_of(&[alpha.neg()])?, "[[α̃-kσ, -α̃+σ], -α̃+(k-1)σ]");
        vec![sigma.neg(), km1.neg(), minus_am, last]
    };
    is_special_chain(sys, alpha, &alpha.neg(), &chain).map_err(|e| fail(format!("not a special chain: {e}")))?;
    let witnesses = lift_chain(sys, top_root, &chain, &top_root.neg())
        .ok_or_else(|| fail("no absolute witnesses over the chain".into()))?;
    Ok(MaxChain {
        top_root: top_root.clone(),
        s,
        sigma,
        case: if k == 1 { ChainCase::A } else { ChainCase::B },
        k,
        chain,
        witnesses,
        discrepancies,
    })
}

fn in_plane(t: &RelativeRoot, a: &RelativeRoot, b: &RelativeRoot) -> bool {
    super::lattice::coordinates(&t.0, &a.0, &b.0).is_some()
}

/// Absolute roots `a_i` over the relative chain with `start + a_1 + ... +
/// a_i` roots for every `i` and total `end`; lexicographically first in
/// canonical order. Depth-first with memoised dead ends.
pub fn lift_chain(sys: &RelativeRootSystem, start: &Root, chain: &[RelativeRoot], end: &Root) -> Option<Vec<Root>> {
    let base = sys.base();
    let fibers: Vec<&[usize]> =
        chain.iter().map(|c| sys.index_of(c).map(|i| sys.fiber(i)).unwrap_or(&[])).collect();
    let start_i = base.index_of(start)?;
    let end_i = base.index_of(end)?;
    let mut dead: HashSet<(usize, usize)> = HashSet::new();
    let mut path = Vec::new();
    fn go(
        sys: &RelativeRootSystem,
        fibers: &[&[usize]],
        depth: usize,
        cur: usize,
        end: usize,
        dead: &mut HashSet<(usize, usize)>,
        path: &mut Vec<usize>,
    ) -> bool {
        if depth == fibers.len() {
            return cur == end;
        }
        if dead.contains(&(depth, cur)) {
            return false;
        }
        for &a in fibers[depth] {
            if let Some(next) = sys.base().sum_index(cur, a) {
                path.push(a);
                if go(sys, fibers, depth + 1, next, end, dead, path) {
                    return true;
                }
                path.pop();
            }
        }
        dead.insert((depth, cur));
        false
    }
    go(sys, &fibers, 0, start_i, end_i, &mut dead, &mut path).then(|| path.iter().map(|&i| base.root(i).clone()).collect())
}

/// Rebase a descending sequence: given the maximal root `top`, positive
/// roots `a_1..a_n` with every `top - a_1 - ... - a_i` a root and `π(a_i) ≠ 0`,
/// ending at a `Π`-minimal root `b` of its fiber, and a root `a0` over
/// `π(top)` in the same component, find positive `a'_i` over `π(a_i)` with
/// `a0 - a'_1 - ... - a'_n = b` and all partial differences roots.
pub fn rebase_chain(sys: &RelativeRootSystem, top: &Root, seq: &[Root], a0: &Root) -> Result<Vec<Root>> {
    let base = sys.base();
    let bad = |m: String| Error::Precondition(format!("rebase: {m}"));
    if !base.highest_roots().contains(top) {
        return Err(bad(format!("{top:?} is not a maximal root")));
    }
    let mut cur = top.clone();
    for a in seq {
        if !(a.is_positive() && base.contains(a)) {
            return Err(bad(format!("{a:?} is not a positive root")));
        }
        if sys.project(a).is_none() {
            return Err(bad(format!("π({a:?}) = 0")));
        }
        cur = cur.sub(a);
        if !base.contains(&cur) {
            return Err(bad(format!("partial difference {cur:?} is not a root")));
        }
    }
    let b = cur;
    let b_rel = sys.project(&b).ok_or_else(|| bad("π(b) = 0".into()))?;
    let b_fiber = sys.fiber(sys.index_of(&b_rel).unwrap());
    let b_i = base.index_of(&b).unwrap();
    if base.simple_indices().iter().any(|&s| base.diff_index(b_i, s).is_some_and(|k| b_fiber.contains(&k))) {
        return Err(bad(format!("{b:?} is not Π-minimal in its fiber")));
    }
    if sys.project(a0) != sys.project(top) || base.component_of(a0) != base.component_of(top) {
        return Err(bad(format!("{a0:?} does not lie over π(ã) in the component of ã")));
    }
    // descending: a0 - a'_1 - ... ; reuse lift_chain with negated steps
    let neg_chain: Vec<RelativeRoot> = seq.iter().map(|a| sys.project(a).unwrap().neg()).collect();
    let lifted = lift_chain(sys, a0, &neg_chain, &b).ok_or_else(|| bad("no rebased sequence exists".into()))?;
    let out: Vec<Root> = lifted.iter().map(Root::neg).collect();
    if let Some(a) = out.iter().find(|a| !a.is_positive()) {
        return Err(bad(format!("rebased step {a:?} is not positive")));
    }
    Ok(out)
}

/// Instances for the rebase check: for each relative root, descents from
/// `ã` to the `Π`-minimal roots of its fiber by positive roots with nonzero
/// image, shortest and canonical-first.
pub fn rebase_instances(sys: &RelativeRootSystem, top: &Root) -> Vec<(Vec<Root>, Root)> {
    let base = sys.base();
    let Some(top_i) = base.index_of(top) else { return Vec::new() };
    let comp = base.component_of(top);
    let steps: Vec<usize> = base.positive_indices().filter(|&a| sys.project_index(a).is_some()).collect();
    let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut queue = VecDeque::from([top_i]);
    let mut seen = vec![false; base.len()];
    seen[top_i] = true;
    while let Some(x) = queue.pop_front() {
        for &a in &steps {
            if let Some(y) = base.diff_index(x, a) {
                if !seen[y] {
                    seen[y] = true;
                    prev.insert(y, (x, a));
                    queue.push_back(y);
                }
            }
        }
    }
    let mut out = Vec::new();
    for alpha in 0..sys.len() {
        let (_, minimal) = sys.fiber_extremes_all(alpha, comp);
        for b in minimal {
            if !seen[b] || b == top_i {
                continue;
            }
            let mut seq = Vec::new();
            let mut y = b;
            while y != top_i {
                let (x, a) = prev[&y];
                seq.push(base.root(a).clone());
                y = x;
            }
            seq.reverse();
            out.push((seq, base.root(b).clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::relroots::ProjectionSpec;
    use crate::rootcore::RootSystem;

    fn split(name: &str) -> RelativeRootSystem {
        RelativeRootSystem::new(ProjectionSpec::split(Arc::new(RootSystem::from_name(name).unwrap())))
    }

    fn inner(name: &str, j: &[usize]) -> RelativeRootSystem {
        RelativeRootSystem::new(ProjectionSpec::inner(Arc::new(RootSystem::from_name(name).unwrap()), j).unwrap())
    }

    fn r(v: &[i32]) -> RelativeRoot {
        RelativeRoot(v.to_vec())
    }

    fn elems(sys: &RelativeRootSystem, idx: &[usize]) -> Vec<RelativeRoot> {
        idx.iter().map(|&i| sys.element(i).clone()).collect()
    }

    #[test]
    fn special_chain_examples() {
        let a2 = split("A2");
        let i = |v: &[i32]| a2.index_of(&r(v)).unwrap();
        assert_eq!(find_special_chain(&a2, i(&[1, 0]), i(&[1, 0])).unwrap(), Some(vec![]));
        let c = find_special_chain(&a2, i(&[1, 0]), i(&[1, 1])).unwrap().unwrap();
        assert_eq!(elems(&a2, &c), vec![r(&[0, 1])]);
        let c = find_special_chain(&a2, i(&[-1, -1]), i(&[1, 1])).unwrap().unwrap();
        // the maximal-root chain shape (σ, α̃, α̃ - σ), canonical-first σ
        assert_eq!(elems(&a2, &c), vec![r(&[0, 1]), r(&[1, 1]), r(&[1, 0])]);
        is_special_chain(&a2, &r(&[-1, -1]), &r(&[1, 1]), &elems(&a2, &c)).unwrap();
        let neg = find_special_chain(&a2, i(&[1, 1]), i(&[-1, -1])).unwrap().unwrap();
        assert!(elems(&a2, &neg).iter().all(|b| b.is_negative()));
    }

    #[test]
    fn checker_rejects_bad_chains() {
        let a2 = split("A2");
        // partial sum 0
        assert!(is_special_chain(&a2, &r(&[-1, -1]), &r(&[1, 1]), &[r(&[1, 1]), r(&[1, 1])]).is_err());
        // wrong endpoint
        assert!(is_special_chain(&a2, &r(&[1, 0]), &r(&[1, 1]), &[r(&[1, 0])]).is_err());
        let bc1 = {
            let b = Arc::new(RootSystem::from_name("A2").unwrap());
            let g = b.automorphisms();
            RelativeRootSystem::new(ProjectionSpec::new(b, &[0, 1], g).unwrap())
        };
        assert!(find_special_chain(&bc1, 0, 3).is_err());
    }

    #[test]
    fn chains_to_max() {
        let a2 = split("A2");
        let a1 = a2.index_of(&r(&[1, 0])).unwrap();
        assert_eq!(elems(&a2, &chain_to_max(&a2, a1).unwrap()), vec![r(&[0, 1])]);
        let top = a2.highest();
        assert!(chain_to_max(&a2, top).unwrap().is_empty());

        let a3 = inner("A3", &[0, 2]);
        let start = a3.index_of(&r(&[-1, -1])).unwrap();
        let idx = chain_to_max(&a3, start).unwrap();
        assert!(idx.len() >= 2);
        assert!(a3.independent(start, idx[0]));
        check_chain_to_max(&a3, &r(&[-1, -1]), &r(&[1, 1]), &elems(&a3, &idx)).unwrap();
    }

    #[test]
    fn maximal_chain_constructions() {
        let a2 = split("A2");
        let m = construct_chain_max(&a2).unwrap();
        assert_eq!(m.case, ChainCase::A);
        assert_eq!(m.sigma, r(&[1, 0]));
        assert_eq!(m.chain, vec![r(&[-1, 0]), r(&[-1, -1]), r(&[0, -1])]);
        let total = m.witnesses.iter().fold(m.top_root.clone(), |acc, a| acc.add(a));
        assert_eq!(total, m.top_root.neg());

        let c2 = split("C2");
        let m = construct_chain_max(&c2).unwrap();
        assert_eq!(m.case, ChainCase::B);
        assert_eq!(m.k, 2);
        assert_eq!(m.chain.len(), 4);

        let g2 = split("G2");
        let m = construct_chain_max(&g2).unwrap();
        is_special_chain(&g2, &r(&[3, 2]), &r(&[-3, -2]), &m.chain).unwrap();
    }

    #[test]
    fn rebase_examples() {
        let a3 = inner("A3", &[0, 2]);
        let top = Root(vec![1, 1, 1]);
        let seq = vec![Root(vec![0, 0, 1]), Root(vec![0, 1, 0])];
        // a2 lies in the kernel, so the hypothesis fails
        assert!(rebase_chain(&a3, &top, &seq, &top).is_err());
        let seq = vec![Root(vec![0, 1, 1])];
        let out = rebase_chain(&a3, &top, &seq, &top).unwrap();
        assert_eq!(out, seq);

        for (j, min_over) in [(&[0usize, 1][..], 1), (&[1, 2][..], 2)] {
            let c3 = inner("C3", j);
            let top = c3.base().highest_roots()[0].clone();
            let over = c3.fiber(c3.index_of(&c3.project(&top).unwrap()).unwrap()).to_vec();
            assert!(over.len() >= min_over);
            let instances = rebase_instances(&c3, &top);
            assert!(instances.iter().any(|(seq, _)| seq.len() >= 2));
            for (seq, b) in &instances {
                for &a0 in &over {
                    let a0 = c3.base().root(a0).clone();
                    let out = rebase_chain(&c3, &top, seq, &a0).unwrap();
                    let end = out.iter().fold(a0.clone(), |acc, a| acc.sub(a));
                    assert_eq!(&end, b);
                }
            }
        }
    }
}
