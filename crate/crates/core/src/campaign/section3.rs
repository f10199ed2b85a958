//! The relative-root campaign over every irreducible root system up to a
//! rank cap, every subgroup of diagram automorphisms and every invariant `J`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::relroots::verify::{verify_section3, Status, VerifyOptions};
use crate::relroots::{all_projections, CaseDescriptor, ProjectionSpec, RelativeRootSystem};
use crate::rootcore::{RootSystem, Series};

/// One row of the relative-root report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section3Row {
    pub case: CaseDescriptor,
    pub lemma: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
}

/// Every projection of every irreducible system of rank at most `max_rank`
/// whose relative system has rank at least 2.
pub fn campaign_cases(max_rank: usize) -> Vec<ProjectionSpec> {
    let mut out = Vec::new();
    for (s, n) in Series::all_types(max_rank) {
        let base = Arc::new(RootSystem::build(s, n).expect("supported type"));
        out.extend(all_projections(&base).into_iter().filter(|p| p.relative_rank() >= 2));
    }
    out
}

pub fn verify_case(spec: &ProjectionSpec, opts: VerifyOptions) -> Vec<Section3Row> {
    let sys = RelativeRootSystem::new(spec.clone());
    let case = spec.descriptor();
    verify_section3(&sys, opts)
        .into_iter()
        .map(|r| Section3Row { case: case.clone(), lemma: r.lemma, status: r.status, witness: r.witness })
        .collect()
}

/// Run the campaign; rows come out in case-enumeration order.
pub fn run(max_rank: usize, opts: VerifyOptions) -> Vec<Section3Row> {
    let cases = campaign_cases(max_rank);
    cases.par_iter().map(|c| verify_case(c, opts)).collect::<Vec<_>>().into_iter().flatten().collect()
}
