//! Case manifests: the JSON input of every subcommand.

use std::sync::Arc;

use chevlab::algebra::FiniteRing;
use chevlab::chevalley::RepKind;
use chevlab::relcalc::{constants_invertible, RelCase};
use chevlab::relroots::ProjectionSpec;
use chevlab::rootcore::{cartan_matrix, DiagramAutGroup, RootSystem, Series};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    /// Also run the subcommand's full campaign over every type up to this rank.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Seeded normal closures per case for `lab normality`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default)]
    pub cases: Vec<CaseEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Output>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseEntry {
    pub series: String,
    pub rank: usize,
    /// 1-based simple roots; all of them when absent.
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
    /// Generators of Γ as 1-based permutations of the simple roots.
    #[serde(rename = "Gamma", default, skip_serializing_if = "Vec::is_empty")]
    pub gamma: Vec<Vec<usize>>,
    /// Must equal the Cartan matrix of `series` and `rank` when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    /// Generator of the ideal for the exactness check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
}

/// Which hypotheses a subcommand needs of its cases.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Gates {
    pub trivial_gamma: bool,
    pub ring: bool,
    pub rank_two: bool,
    pub local: bool,
    pub invertible: bool,
}

#[derive(Debug)]
pub struct ManifestError(pub String);

impl std::fmt::Display for ManifestError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid manifest: {}", self.0)
    }
}

impl std::error::Error for ManifestError {}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self, ManifestError> {
        serde_json::from_str(text).map_err(|e| ManifestError(e.to_string()))
    }

    /// SHA-256 of the canonical serialization.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("manifest serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn validate(&self, gates: Gates) -> Result<(), ManifestError> {
        for (i, c) in self.cases.iter().enumerate() {
            c.validate(gates).map_err(|e| ManifestError(format!("cases[{i}]: {}", e.0)))?;
        }
        Ok(())
    }
}

impl CaseEntry {
    pub fn new(series: Series, rank: usize) -> Self {
        CaseEntry {
            series: series.to_string(),
            rank,
            j: None,
            gamma: Vec::new(),
            cartan: None,
            ring: None,
            ideal: None,
            rep: None,
            budget: None,
        }
    }

    pub fn series(&self) -> Result<Series, ManifestError> {
        self.series.parse().map_err(|_| ManifestError(format!("unknown series {:?}", self.series)))
    }

    pub fn root_system(&self) -> Result<Arc<RootSystem>, ManifestError> {
        let s = self.series()?;
        let sys = RootSystem::build(s, self.rank).map_err(|e| ManifestError(e.to_string()))?;
        if let Some(c) = &self.cartan {
            let expected = cartan_matrix(s, self.rank).map_err(|e| ManifestError(e.to_string()))?;
            if c != &expected {
                return Err(ManifestError(format!("cartan does not match {s}{}: expected {expected:?}", self.rank)));
            }
        }
        Ok(Arc::new(sys))
    }

    pub fn projection(&self) -> Result<ProjectionSpec, ManifestError> {
        let base = self.root_system()?;
        let n = self.rank;
        let j: Vec<usize> = match &self.j {
            None => (0..n).collect(),
            Some(j) => {
                if let Some(&bad) = j.iter().find(|&&x| x == 0 || x > n) {
                    return Err(ManifestError(format!("J entry {bad} out of range 1..={n}")));
                }
                j.iter().map(|x| x - 1).collect()
            }
        };
        let mut gens = Vec::new();
        for p in &self.gamma {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true)) {
                return Err(ManifestError(format!("Gamma entry {p:?} is not a permutation of 1..={n}")));
            }
            gens.push(p.iter().map(|x| x - 1).collect());
        }
        let gamma = DiagramAutGroup::generated_by(n, &gens);
        ProjectionSpec::new(base, &j, gamma).map_err(|e| ManifestError(e.to_string()))
    }

    pub fn rep_kind(&self) -> Result<Option<RepKind>, ManifestError> {
        match self.rep.as_deref() {
            None => Ok(None),
            Some("adjoint") => Ok(Some(RepKind::Adjoint)),
            Some("natural") => Ok(Some(RepKind::Natural)),
            Some("symplectic") => Ok(Some(RepKind::Symplectic)),
            Some(other) => Err(ManifestError(format!("unknown rep {other:?}"))),
        }
    }

    pub fn ring(&self) -> Result<Option<FiniteRing>, ManifestError> {
        self.ring.as_deref().map(FiniteRing::parse).transpose().map_err(|e| ManifestError(e.to_string()))
    }

    /// Series, rank and 1-based `J`, for cases with `Γ = 1`.
    pub fn rel_case(&self) -> Result<RelCase, ManifestError> {
        let spec = self.projection()?;
        let kind = self.rep_kind()?;
        let case = match kind {
            Some(k) => RelCase::new(spec, k),
            None => RelCase::preferred(spec),
        };
        case.map_err(|e| ManifestError(e.to_string()))
    }

    pub fn validate(&self, gates: Gates) -> Result<(), ManifestError> {
        let spec = self.projection()?;
        self.rep_kind()?;
        let ring = self.ring()?;
        if let (Some(r), Some(g)) = (&ring, &self.ideal) {
            r.parse_element(g).map_err(|e| ManifestError(e.to_string()))?;
        }
        if gates.trivial_gamma && !spec.gamma_trivial() {
            return Err(ManifestError("this subcommand supports Gamma = 1 only".into()));
        }
        if gates.rank_two && spec.relative_rank() < 2 {
            return Err(ManifestError("relative rank must be at least 2".into()));
        }
        let Some(ring) = ring else {
            return if gates.ring { Err(ManifestError("ring is required".into())) } else { Ok(()) };
        };
        if gates.local && !ring.is_local() {
            return Err(ManifestError(format!("{} is not a local ring", ring.name())));
        }
        if gates.invertible {
            let case = self.rel_case()?;
            if !constants_invertible(&case, &ring) {
                return Err(ManifestError(format!(
                    "structure constants of {} are not invertible in {}",
                    case.name(),
                    ring.name()
                )));
            }
        }
        Ok(())
    }

    /// 1-based `J` as given, `None` for the split case.
    pub fn j(&self) -> Option<&[usize]> {
        self.j.as_deref().filter(|j| j.len() < self.rank)
    }
}
