//! Structure constants and the commutator formula: symbolic for every type
//! of small rank, numeric at random points for `E6`, `E7`, `E8`.

use std::sync::Arc;

use serde_json::json;

use super::{to_value, Record};
use crate::chevalley::{verify_commutator_formula, verify_commutator_numeric, Representation, StructureConstants};
use crate::rootcore::{RootSystem, Series};

pub const NUMERIC_PRIMES: [u64; 3] = [5, 7, 11];

#[derive(Clone, Copy, Debug)]
pub struct ConstantsOptions {
    /// Largest rank checked symbolically.
    pub symbolic_rank: usize,
    /// Largest rank of an `E` type checked numerically.
    pub max_rank: usize,
    pub samples_per_prime: usize,
    pub seed: u64,
    /// Include the full constant tables in the records.
    pub tables: bool,
}

impl Default for ConstantsOptions {
    fn default() -> Self {
        ConstantsOptions { symbolic_rank: 4, max_rank: 8, samples_per_prime: 34, seed: 1, tables: false }
    }
}

/// The types covered: every type of rank `<= symbolic_rank` plus `G2`, `F4`
/// symbolically, and `E6..E8` up to `max_rank` numerically.
pub fn cases(opts: &ConstantsOptions) -> Vec<(Series, usize, bool)> {
    let mut out: Vec<(Series, usize, bool)> =
        Series::all_types(opts.symbolic_rank.min(opts.max_rank)).into_iter().map(|(s, n)| (s, n, true)).collect();
    for (s, n) in [(Series::G, 2), (Series::F, 4)] {
        if n <= opts.max_rank && !out.iter().any(|c| (c.0, c.1) == (s, n)) {
            out.push((s, n, true));
        }
    }
    for n in 6..=8.min(opts.max_rank) {
        if !out.iter().any(|c| (c.0, c.1) == (Series::E, n)) {
            out.push((Series::E, n, false));
        }
    }
    out
}

pub fn run_case(series: Series, rank: usize, symbolic: bool, opts: &ConstantsOptions) -> Record {
    let name = format!("{series}{rank}");
    let sys = match RootSystem::build(series, rank) {
        Ok(s) => Arc::new(s),
        Err(e) => return Record::skipped(name, "commutator_formula", e.to_string()),
    };
    let constants = Arc::new(StructureConstants::new(sys));
    let rep = Representation::adjoint(constants.clone());
    let report = if symbolic {
        Ok(verify_commutator_formula(&rep))
    } else {
        verify_commutator_numeric(&rep, &NUMERIC_PRIMES, opts.samples_per_prime, opts.seed)
    };
    match report {
        Ok(mut r) => {
            let passed = r.passed();
            r.records.clear();
            let mut data = json!({ "report": to_value(&r), "constants_check": constants.check().err() });
            if opts.tables {
                data["constants"] = to_value(&constants.to_json());
            }
            Record::new(name, "commutator_formula", passed && constants.check().is_ok(), data)
        }
        Err(e) => Record::skipped(name, "commutator_formula", e.to_string()),
    }
}

pub fn run(opts: &ConstantsOptions) -> Vec<Record> {
    cases(opts).into_iter().map(|(s, n, sym)| run_case(s, n, sym, opts)).collect()
}
