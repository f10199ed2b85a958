//! Steinberg groups `St_P(R)` over finite rings: presentations on the
//! generators `X̃_α(v)`, coset enumeration, and comparison with the
//! elementary matrix group through the canonical map `s_P`.

pub mod coset;
pub mod verify;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteRing;
use crate::error::{Error, Result};
use crate::grouplab::module_elements;
use crate::relcalc::RelCase;

pub use crate::grouplab::elementary_group;
pub use coset::{todd_coxeter, CosetTable, EnumStats, TableStatus, Word, DEFAULT_BUDGET};
pub use verify::{
    enumerate, verify_k2_centrality, verify_mono, verify_st_ker, K2Report, MonoReport, StEnumeration, StKerReport,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StGenerator {
    pub alpha: usize,
    pub root: Vec<i32>,
    pub v: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelatorKind {
    Sum,
    Commutator,
    /// Extra relators killing generators, used for quotient presentations.
    Kill,
}

impl RelatorKind {
    fn tag(self) -> &'static str {
        match self {
            RelatorKind::Sum => "sum",
            RelatorKind::Commutator => "commutator",
            RelatorKind::Kill => "kill",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub kind: RelatorKind,
    pub word: Word,
}

/// A finite presentation of `St_P(R)`; generator ids in words are 1-based.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub case: String,
    pub ring: FiniteRing,
    pub generators: Vec<StGenerator>,
    pub relators: Vec<Relator>,
    index: HashMap<(usize, Vec<u8>), usize>,
}

impl Presentation {
    fn with_generators(case: String, ring: FiniteRing, generators: Vec<StGenerator>) -> Self {
        let index = generators.iter().enumerate().map(|(i, g)| ((g.alpha, g.v.clone()), i)).collect();
        Presentation { case, ring, generators, relators: Vec::new(), index }
    }

    /// The 1-based id of `X̃_α(v)`, `None` for `v = 0`.
    pub fn id(&self, alpha: usize, v: &[u8]) -> Option<i32> {
        self.index.get(&(alpha, v.to_vec())).map(|&i| i as i32 + 1)
    }

    /// The word of an ordered product of generators, zero arguments omitted.
    pub fn product_word(&self, factors: &[(usize, Vec<u8>)]) -> Word {
        factors.iter().filter_map(|(a, v)| self.id(*a, v)).collect()
    }

    pub fn words(&self) -> Vec<Word> {
        self.relators.iter().map(|r| r.word.clone()).collect()
    }

    pub fn count(&self, kind: RelatorKind) -> usize {
        self.relators.iter().filter(|r| r.kind == kind).count()
    }

    /// Line format: `gen <id> alpha=[a,b] v=<labels>` and `rel <ids> # <kind>`.
    pub fn to_text(&self) -> String {
        let mut s = format!("# St_P({}) over {}\n", self.case, self.ring.name());
        for (i, g) in self.generators.iter().enumerate() {
            let root: Vec<String> = g.root.iter().map(i32::to_string).collect();
            let v: Vec<&str> = g.v.iter().map(|&x| self.ring.label(x)).collect();
            writeln!(s, "gen {} alpha=[{}] v={}", i + 1, root.join(","), v.join(",")).unwrap();
        }
        for r in &self.relators {
            let w: Vec<String> = r.word.iter().map(i32::to_string).collect();
            writeln!(s, "rel {} # {}", w.join(" "), r.kind.tag()).unwrap();
        }
        s
    }

    /// Parse the text format against a case and ring. Relators without a
    /// kind tag are read as commutator relators.
    pub fn parse(text: &str, case: &RelCase, ring: &FiniteRing) -> Result<Self> {
        let sys = case.system();
        let mut generators = Vec::new();
        let mut relators = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let err = |m: &str| Error::Parse(format!("line {}: {m}", n + 1));
            let (body, comment) = line.split_once('#').unwrap_or((line, ""));
            let mut parts = body.split_whitespace();
            match parts.next() {
                None => continue,
                Some("gen") => {
                    let id: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("bad generator id"))?;
                    if id != generators.len() + 1 {
                        return Err(err("generator ids must be consecutive from 1"));
                    }
                    let alpha = parts
                        .next()
                        .and_then(|s| s.strip_prefix("alpha=["))
                        .and_then(|s| s.strip_suffix(']'))
                        .ok_or_else(|| err("expected alpha=[..]"))?;
                    let root: Vec<i32> = alpha
                        .split(',')
                        .map(|x| x.trim().parse().map_err(|_| err("bad root coordinate")))
                        .collect::<Result<_>>()?;
                    let a = (0..sys.len()).find(|&a| sys.element(a).0 == root).ok_or_else(|| err("not a relative root"))?;
                    let v = parts.next().and_then(|s| s.strip_prefix("v=")).ok_or_else(|| err("expected v=.."))?;
                    let v: Vec<u8> = v.split(',').map(|x| ring.parse_element(x)).collect::<Result<_>>()?;
                    if v.len() != case.dim(a) {
                        return Err(err("coordinate count does not match the fiber"));
                    }
                    generators.push(StGenerator { alpha: a, root, v });
                }
                Some("rel") => {
                    let word: Word = parts
                        .map(|x| x.parse::<i32>().map_err(|_| err("bad letter")))
                        .collect::<Result<_>>()?;
                    let kind = match comment.trim() {
                        "sum" => RelatorKind::Sum,
                        "kill" => RelatorKind::Kill,
                        _ => RelatorKind::Commutator,
                    };
                    relators.push(Relator { kind, word });
                }
                Some(other) => return Err(err(&format!("unknown line type {other:?}"))),
            }
        }
        let mut p = Presentation::with_generators(case.name(), ring.clone(), generators);
        for r in &relators {
            if let Some(&x) = r.word.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > p.generators.len()) {
                return Err(Error::Parse(format!("letter {x} out of range")));
            }
        }
        p.relators = relators;
        Ok(p)
    }
}

fn inverse_word(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

/// Generators `X̃_α(v)` for every relative root and nonzero `v ∈ V_α ⊗ R`,
/// relators of the sum relation for all `(α, v, w)` and of the commutator
/// formula for all non-opposite `(α, β)` and nonzero `(u, v)`.
pub fn presentation(case: &RelCase, ring: &FiniteRing) -> Result<Presentation> {
    let sys = case.system();
    let unit = ring.unit_ideal();
    let mut generators = Vec::new();
    let mut vectors = Vec::new();
    for a in 0..sys.len() {
        let vs: Vec<Vec<u8>> = module_elements(&unit, case.dim(a)).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
        for v in &vs {
            generators.push(StGenerator { alpha: a, root: sys.element(a).0.clone(), v: v.clone() });
        }
        vectors.push(vs);
    }
    let mut p = Presentation::with_generators(case.name(), ring.clone(), generators);
    for a in 0..sys.len() {
        let q = case.q_maps(a)?;
        for v in &vectors[a] {
            for w in &vectors[a] {
                let sum: Vec<u8> = v.iter().zip(w).map(|(&x, &y)| ring.add_u8(x, y)).collect();
                let mut rhs = vec![(a, sum)];
                rhs.extend(q.iter().map(|m| (m.target, m.eval(ring, &[v, w]))));
                let mut word = vec![p.id(a, v).unwrap(), p.id(a, w).unwrap()];
                word.extend(inverse_word(&p.product_word(&rhs)));
                p.relators.push(Relator { kind: RelatorKind::Sum, word });
            }
        }
    }
    for a in 0..sys.len() {
        for b in 0..sys.len() {
            if sys.opposite(a, b) {
                continue;
            }
            let n = case.n_maps(a, b)?;
            for u in &vectors[a] {
                for v in &vectors[b] {
                    let rhs: Vec<(usize, Vec<u8>)> = n.iter().map(|m| (m.target, m.eval(ring, &[u, v]))).collect();
                    let (x, y) = (p.id(a, u).unwrap(), p.id(b, v).unwrap());
                    let mut word = vec![x, y, -x, -y];
                    word.extend(inverse_word(&p.product_word(&rhs)));
                    p.relators.push(Relator { kind: RelatorKind::Commutator, word });
                }
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootcore::Series;

    #[test]
    fn generator_counts() {
        let case = RelCase::build(Series::A, 2, None, None).unwrap();
        let f2 = presentation(&case, &FiniteRing::field(2).unwrap()).unwrap();
        assert_eq!(f2.generators.len(), 6);
        // over F2 every sum relator reads x x = 1
        assert!(f2.relators.iter().filter(|r| r.kind == RelatorKind::Sum).all(|r| r.word.len() == 2 && r.word[0] == r.word[1]));
        let f3 = presentation(&case, &FiniteRing::field(3).unwrap()).unwrap();
        assert_eq!(f3.generators.len(), 12);
        assert_eq!(f3.count(RelatorKind::Sum), 6 * 4);
        assert_eq!(f3.count(RelatorKind::Commutator), 30 * 4);
    }

    #[test]
    fn zero_module_has_no_generators() {
        let case = RelCase::build(Series::A, 2, None, None).unwrap();
        let ring = FiniteRing::field(3).unwrap();
        let (zero, _) = ring.quotient(&ring.unit_ideal());
        let p = presentation(&case, &zero).unwrap();
        assert!(p.generators.is_empty());
        assert!(p.relators.is_empty());
    }

    #[test]
    fn text_round_trip() {
        let case = RelCase::build(Series::C, 2, Some(&[1]), None).unwrap();
        let ring = FiniteRing::parse("F3").unwrap();
        let p = presentation(&case, &ring).unwrap();
        let q = Presentation::parse(&p.to_text(), &case, &ring).unwrap();
        assert_eq!(p.generators, q.generators);
        assert_eq!(p.relators, q.relators);
    }

    #[test]
    fn parse_errors() {
        let case = RelCase::build(Series::A, 2, None, None).unwrap();
        let ring = FiniteRing::field(2).unwrap();
        assert!(Presentation::parse("gen 1 alpha=[1,1,1] v=1", &case, &ring).is_err());
        assert!(Presentation::parse("gen 1 alpha=[1,0] v=1\nrel 2", &case, &ring).is_err());
        assert!(Presentation::parse("frob", &case, &ring).is_err());
    }
}
