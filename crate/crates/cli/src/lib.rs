//! Command-line orchestration of the chevlab campaigns: case manifests,
//! report files and exit codes.

pub mod manifest;
pub mod report;
pub mod run;

pub use manifest::{CaseEntry, Gates, Manifest, ManifestError};
pub use report::{Report, Timing};
pub use run::{execute, summarize, Options, Subcommand};
