//! Campaign runners: enumerate cases, run the checks and assemble
//! deterministic report records.

pub mod constants;
pub mod lab;
pub mod relcalc;
pub mod section3;
pub mod steinberg;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use crate::relroots::verify::Status;

/// One checked statement on one case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub case: String,
    pub check: String,
    pub status: Status,
    /// Set when an enumeration ran out of budget; the status is then `skipped`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub overflow: bool,
    pub data: Value,
}

impl Record {
    pub fn new(case: impl Into<String>, check: &str, passed: bool, data: Value) -> Self {
        let status = if passed { Status::Pass } else { Status::Fail };
        Record { case: case.into(), check: check.into(), status, overflow: false, data }
    }

    pub fn with_status(case: impl Into<String>, check: &str, status: Status, data: Value) -> Self {
        Record { case: case.into(), check: check.into(), status, overflow: false, data }
    }

    /// A check whose preconditions failed, or that errored.
    pub fn skipped(case: impl Into<String>, check: &str, reason: String) -> Self {
        Self::with_status(case, check, Status::Skipped, serde_json::json!({ "reason": reason }))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rollup {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub measured: usize,
    pub skipped: usize,
    pub overflow: usize,
}

impl Rollup {
    pub fn of(records: &[Record]) -> Self {
        let mut r = Rollup { total: records.len(), ..Default::default() };
        for rec in records {
            match rec.status {
                Status::Pass => r.pass += 1,
                Status::Fail => r.fail += 1,
                Status::Measured => r.measured += 1,
                Status::Skipped => r.skipped += 1,
            }
            r.overflow += rec.overflow as usize;
        }
        r
    }
}

/// Serialize a report value; panics only on non-string map keys, which the
/// report types do not use.
pub(crate) fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}
