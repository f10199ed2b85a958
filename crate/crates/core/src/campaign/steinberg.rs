//! Steinberg groups on the roster: enumeration, well-definedness and
//! centrality of the kernel of `s_P`, and the injectivity and exactness
//! checks on unipotent and level subgroups.

use std::sync::Arc;

use super::{to_value, Record, Status};
use crate::algebra::{FiniteRing, Ideal};
use crate::error::Result;
use crate::relcalc::RelCase;
use crate::rootcore::Series;
use crate::steinberg::{verify_k2_centrality, verify_mono, verify_st_ker, TableStatus};

/// A Steinberg case: `(series, rank, ring)` with `J = Π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StCaseSpec {
    pub series: Series,
    pub rank: usize,
    pub j: Option<Vec<usize>>,
    pub ring: String,
    /// Ideal generator for the exactness check, if any.
    pub ideal: Option<String>,
}

impl StCaseSpec {
    pub fn split(series: Series, rank: usize, ring: &str) -> Self {
        StCaseSpec { series, rank, j: None, ring: ring.into(), ideal: None }
    }
}

pub fn roster() -> Vec<StCaseSpec> {
    vec![
        StCaseSpec::split(Series::A, 2, "F2"),
        StCaseSpec::split(Series::A, 2, "F3"),
        StCaseSpec::split(Series::A, 2, "Z/4"),
        StCaseSpec::split(Series::C, 2, "F3"),
    ]
}

pub fn exactness_roster() -> Vec<StCaseSpec> {
    vec![
        StCaseSpec { ideal: Some("2".into()), ..StCaseSpec::split(Series::A, 2, "Z/4") },
        StCaseSpec { ideal: Some("t".into()), ..StCaseSpec::split(Series::A, 2, "F2[t]/(t^2)") },
    ]
}

fn build(spec: &StCaseSpec) -> Result<(Arc<RelCase>, FiniteRing)> {
    let case = RelCase::build(spec.series, spec.rank, spec.j.as_deref(), None)?;
    Ok((Arc::new(case), FiniteRing::parse(&spec.ring)?))
}

fn label(case: &RelCase, ring: &FiniteRing) -> String {
    format!("{} / {}", case.name(), ring.name())
}

/// Centrality of the kernel, then injectivity on `Φ_P^+` and on every
/// single root.
pub fn run_case(spec: &StCaseSpec, budget: usize) -> Vec<Record> {
    let (case, ring) = match build(spec) {
        Ok(x) => x,
        Err(e) => return vec![Record::skipped(format!("{:?}{} / {}", spec.series, spec.rank, spec.ring), "k2_central", e.to_string())],
    };
    let name = label(&case, &ring);
    let (report, st) = match verify_k2_centrality(case.clone(), &ring, budget) {
        Ok(x) => x,
        Err(e) => return vec![Record::skipped(name, "k2_central", e.to_string())],
    };
    let mut out = Vec::new();
    if report.status == TableStatus::Overflow {
        let mut r = Record::with_status(&name, "k2_central", Status::Skipped, to_value(&report));
        r.overflow = true;
        out.push(r);
        return out;
    }
    out.push(Record::new(&name, "k2_central", report.passed(), to_value(&report)));
    let sys = case.system();
    let mut sets = vec![sys.positive_indices()];
    sets.extend((0..sys.len()).map(|a| vec![a]));
    for set in sets {
        let check = if set.len() == 1 { "mono_single_root" } else { "mono_positive" };
        match verify_mono(&st, &set) {
            Ok(m) => out.push(Record::new(&name, check, m.passed(), to_value(&m))),
            Err(e) => out.push(Record::skipped(&name, check, e.to_string())),
        }
    }
    out
}

/// `|St_P(R) / <<X̃(I V)>>| = |St_P(R/I)|`.
pub fn run_exactness(spec: &StCaseSpec, budget: usize) -> Record {
    let built = build(spec).and_then(|(case, ring)| {
        let ideal: Ideal = match &spec.ideal {
            Some(g) => ring.ideal_generated(&[ring.parse_element(g)?]),
            None => ring.zero_ideal(),
        };
        Ok((case, ring, ideal))
    });
    let (case, ring, ideal) = match built {
        Ok(x) => x,
        Err(e) => return Record::skipped(format!("{:?}{} / {}", spec.series, spec.rank, spec.ring), "st_ker", e.to_string()),
    };
    let name = label(&case, &ring);
    match verify_st_ker(case, &ring, &ideal, budget) {
        Ok(r) => {
            let complete = r.st_order.is_some() && r.st_quotient_order.is_some() && r.killed_order.is_some();
            let mut rec = Record::new(&name, "st_ker", r.passed(), to_value(&r));
            if !complete {
                rec.status = Status::Skipped;
                rec.overflow = true;
            }
            rec
        }
        Err(e) => Record::skipped(name, "st_ker", e.to_string()),
    }
}

pub fn run(cases: &[StCaseSpec], budget: usize) -> Vec<Record> {
    let mut out = Vec::new();
    for spec in cases {
        if spec.ideal.is_some() {
            out.push(run_exactness(spec, budget));
        } else {
            out.extend(run_case(spec, budget));
        }
    }
    out
}

/// The roster and exactness instances together.
pub fn run_default(budget: usize) -> Vec<Record> {
    let mut cases = roster();
    cases.extend(exactness_roster());
    run(&cases, budget)
}
