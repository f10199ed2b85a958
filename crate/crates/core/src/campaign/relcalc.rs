//! The relative commutator calculus on the case roster.

use serde_json::json;

use super::{to_value, Record};
use crate::algebra::FiniteRing;
use crate::error::Result;
use crate::relcalc::{
    check_abe, check_f_surjective, rep_independence, verify_chain_comm, verify_identities, RelCase, TupleMode,
};

#[derive(Clone, Debug)]
pub struct RelcalcOptions {
    /// Rings for the `N_{AB11}` nondegeneracy check on type `A` cases.
    pub abe_rings: Vec<String>,
    /// Ring for the nested-commutator check.
    pub chain_ring: String,
    /// Random tuples per chain when the base rank is at least 3.
    pub random_tuples: usize,
    pub seed: u64,
    /// Fields for the `F` map, per case name.
    pub f_fields: Vec<(String, Vec<String>)>,
}

impl Default for RelcalcOptions {
    fn default() -> Self {
        RelcalcOptions {
            abe_rings: vec!["F2".into(), "F3".into(), "Z/4".into()],
            chain_ring: "F3".into(),
            random_tuples: 1000,
            seed: 7,
            f_fields: vec![
                ("A3/{a1,a3}".into(), vec!["F2".into(), "F3".into()]),
                ("C3/{a1,a2}".into(), vec!["F3".into()]),
            ],
        }
    }
}

fn outcome<T: serde::Serialize>(name: &str, check: &str, r: Result<T>, passed: impl Fn(&T) -> bool) -> Record {
    match r {
        Ok(x) => Record::new(name, check, passed(&x), to_value(&x)),
        Err(e) => Record::skipped(name, check, e.to_string()),
    }
}

pub fn run_case(case: &RelCase, opts: &RelcalcOptions) -> Vec<Record> {
    let name = case.name();
    let mut out = vec![outcome(&name, "identities", verify_identities(case), |r| r.passed())];
    let mismatches = rep_independence(case.system().spec().clone());
    out.push(outcome(&name, "rep_independence", mismatches, |m| m.is_empty()));
    let type_a = case.system().base().name().starts_with('A');
    let abe_rings: Vec<&str> =
        if type_a { opts.abe_rings.iter().map(String::as_str).collect() } else { vec![opts.chain_ring.as_str()] };
    for ring in abe_rings {
        let r = FiniteRing::parse(ring).and_then(|ring| check_abe(case, &ring));
        out.push(outcome(&name, &format!("abe_nondegenerate[{ring}]"), r, |r| r.passed()));
    }
    let mode = if case.system().base().rank() >= 3 {
        TupleMode::Random { count: opts.random_tuples, seed: opts.seed }
    } else {
        TupleMode::Exhaustive
    };
    let r = FiniteRing::parse(&opts.chain_ring).and_then(|ring| verify_chain_comm(case, &ring, mode));
    out.push(outcome(&name, &format!("chain_commutator[{}]", opts.chain_ring), r, |r| r.passed()));
    for (case_name, fields) in &opts.f_fields {
        if case_name != &name {
            continue;
        }
        for field in fields {
            let r = FiniteRing::parse(field).and_then(|f| check_f_surjective(case, &f));
            out.push(outcome(&name, &format!("f_surjective[{field}]"), r, |r| r.passed()));
        }
    }
    out
}

pub fn run(opts: &RelcalcOptions) -> Result<Vec<Record>> {
    Ok(RelCase::roster()?.iter().flat_map(|c| run_case(c, opts)).collect())
}

/// Export every `q` and `N` map of a case.
pub fn export(case: &RelCase) -> Result<Record> {
    Ok(Record::with_status(case.name(), "maps", super::Status::Measured, json!({ "maps": case.export_maps()? })))
}
