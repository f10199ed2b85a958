//! Report files and their text rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chevlab::campaign::{Record, Rollup, Status};
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub manifest_hash: String,
    pub subcommand: String,
    pub manifest: crate::manifest::Manifest,
    pub records: Vec<Record>,
    pub rollup: Rollup,
    pub timing: Timing,
}

/// The only fields allowed to differ between reruns.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
    pub threads: usize,
}

impl Report {
    pub fn new(subcommand: &str, manifest: crate::manifest::Manifest, records: Vec<Record>, timing: Timing) -> Self {
        Report {
            tool_version: TOOL_VERSION.into(),
            manifest_hash: manifest.hash(),
            subcommand: subcommand.into(),
            manifest,
            rollup: Rollup::of(&records),
            records,
            timing,
        }
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }

    /// `<subcommand>-<hash prefix>.json`, spaces in the subcommand replaced by dashes.
    pub fn file_name(&self) -> String {
        format!("{}-{}.json", self.subcommand.replace(' ', "-"), &self.manifest_hash[..16])
    }

    /// Write to `out`: a `.json` path is used as is, anything else is a directory.
    pub fn write(&self, out: &Path) -> std::io::Result<PathBuf> {
        let path = if out.extension().is_some_and(|e| e == "json") {
            if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            out.to_path_buf()
        } else {
            std::fs::create_dir_all(out)?;
            out.join(self.file_name())
        };
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        std::fs::write(&path, text)?;
        Ok(path)
    }

    /// The report with timing zeroed, for comparing reruns.
    pub fn without_timing(&self) -> Self {
        Report { timing: Timing::default(), ..self.clone() }
    }
}

fn status_label(r: &Record) -> &'static str {
    match (r.status, r.overflow) {
        (_, true) => "overflow",
        (Status::Pass, _) => "pass",
        (Status::Fail, _) => "FAIL",
        (Status::Measured, _) => "measured",
        (Status::Skipped, _) => "skipped",
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut s = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(s, "{}", parts.join("  ").trim_end()).unwrap();
    };
    line(header.to_vec());
    line(width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    s
}

pub fn render_records(records: &[Record]) -> String {
    let rows: Vec<Vec<String>> =
        records.iter().map(|r| vec![r.case.clone(), r.check.clone(), status_label(r).into()]).collect();
    table(&["case", "check", "status"], &rows)
}

pub fn render_rollup(r: &Rollup) -> String {
    format!(
        "{} records: {} pass, {} fail, {} measured, {} skipped, {} overflow",
        r.total, r.pass, r.fail, r.measured, r.skipped, r.overflow
    )
}
