//! Subcommand execution: manifest resolution, case dispatch and exit codes.

use std::path::{Path, PathBuf};
use std::time::Instant;

use chevlab::campaign::constants::{self, ConstantsOptions};
use chevlab::campaign::lab::{self, LabCaseSpec, LabOptions};
use chevlab::campaign::relcalc::{self, RelcalcOptions};
use chevlab::campaign::section3::{self, Section3Row};
use chevlab::campaign::steinberg::{self, StCaseSpec};
use chevlab::campaign::{Record, Status};
use chevlab::grouplab::DEFAULT_GROUP_BUDGET;
use chevlab::relroots::verify::VerifyOptions;
use chevlab::relroots::CaseDescriptor;
use chevlab::rootcore::{RootSystem, Series};
use chevlab::steinberg::DEFAULT_BUDGET;
use rayon::prelude::*;
use serde_json::json;

use crate::manifest::{CaseEntry, Gates, Manifest, ManifestError};
use crate::report::{render_records, render_rollup, Report, Timing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;

pub const OUT_DIR_ENV: &str = "CHEVLAB_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    RootsInspect,
    RelrootsVerify,
    ConstantsCompute,
    RelcalcVerify,
    SteinbergEnumerate,
    LabNormality,
    LabDiameter,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub manifest: Option<PathBuf>,
    pub max_rank: Option<usize>,
    pub ring: Option<String>,
    pub budget: Option<usize>,
    pub seeds: Option<usize>,
    pub seed: Option<u64>,
    pub strict: bool,
    pub out: Option<PathBuf>,
    pub pretty: bool,
}

fn split(series: Series, rank: usize, ring: Option<&str>) -> CaseEntry {
    CaseEntry { ring: ring.map(str::to_string), ..CaseEntry::new(series, rank) }
}

fn with_j(mut c: CaseEntry, j: &[usize]) -> CaseEntry {
    c.j = Some(j.to_vec());
    c
}

impl Subcommand {
    pub const ALL: [Subcommand; 7] = [
        Subcommand::RootsInspect,
        Subcommand::RelrootsVerify,
        Subcommand::ConstantsCompute,
        Subcommand::RelcalcVerify,
        Subcommand::SteinbergEnumerate,
        Subcommand::LabNormality,
        Subcommand::LabDiameter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::RootsInspect => "roots inspect",
            Subcommand::RelrootsVerify => "relroots verify",
            Subcommand::ConstantsCompute => "constants compute",
            Subcommand::RelcalcVerify => "relcalc verify",
            Subcommand::SteinbergEnumerate => "steinberg enumerate",
            Subcommand::LabNormality => "lab normality",
            Subcommand::LabDiameter => "lab diameter",
        }
    }

    pub fn gates(self) -> Gates {
        let g = Gates::default();
        match self {
            Subcommand::RootsInspect | Subcommand::ConstantsCompute => g,
            Subcommand::RelrootsVerify => Gates { rank_two: true, ..g },
            Subcommand::RelcalcVerify => Gates { trivial_gamma: true, ..g },
            Subcommand::SteinbergEnumerate => {
                Gates { trivial_gamma: true, ring: true, rank_two: true, local: true, invertible: true }
            }
            Subcommand::LabNormality => Gates { trivial_gamma: true, ring: true, rank_two: true, invertible: true, ..g },
            Subcommand::LabDiameter => Gates { trivial_gamma: true, ring: true, local: true, ..g },
        }
    }

    /// The roster run when no manifest is given.
    pub fn default_manifest(self) -> Manifest {
        let m = Manifest::default();
        match self {
            Subcommand::RootsInspect | Subcommand::RelrootsVerify => Manifest { max_rank: Some(8), ..m },
            Subcommand::ConstantsCompute => {
                Manifest { max_rank: Some(8), seed: Some(ConstantsOptions::default().seed), ..m }
            }
            Subcommand::RelcalcVerify => Manifest {
                seed: Some(RelcalcOptions::default().seed),
                cases: vec![
                    split(Series::A, 2, None),
                    with_j(split(Series::A, 3, None), &[1, 3]),
                    with_j(split(Series::C, 2, None), &[1]),
                    split(Series::C, 2, None),
                    with_j(split(Series::C, 3, None), &[1, 2]),
                ],
                ..m
            },
            Subcommand::SteinbergEnumerate => {
                let cases =
                    steinberg::roster().into_iter().chain(steinberg::exactness_roster()).map(st_entry).collect();
                Manifest { budget: Some(DEFAULT_BUDGET), cases, ..m }
            }
            Subcommand::LabNormality => {
                let o = LabOptions::default();
                Manifest {
                    seed: Some(o.seed),
                    seeds: Some(o.seeds_per_case),
                    budget: Some(o.budget),
                    cases: lab::roster().into_iter().map(lab_entry).collect(),
                    ..m
                }
            }
            Subcommand::LabDiameter => Manifest {
                budget: Some(DEFAULT_GROUP_BUDGET),
                cases: lab::diameter_roster().into_iter().map(lab_entry).collect(),
                ..m
            },
        }
    }
}

fn st_entry(s: StCaseSpec) -> CaseEntry {
    CaseEntry { j: s.j, ring: Some(s.ring), ideal: s.ideal, ..CaseEntry::new(s.series, s.rank) }
}

fn lab_entry(s: LabCaseSpec) -> CaseEntry {
    CaseEntry { j: s.j, ring: Some(s.ring), ..CaseEntry::new(s.series, s.rank) }
}

/// The manifest file or the default roster, with command-line overrides
/// applied, validated against the subcommand's hypotheses.
pub fn effective_manifest(sub: Subcommand, opts: &Options) -> Result<Manifest, ManifestError> {
    let mut m = match &opts.manifest {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| ManifestError(format!("{}: {e}", p.display())))?;
            Manifest::parse(&text)?
        }
        None => sub.default_manifest(),
    };
    if opts.max_rank.is_some() {
        m.max_rank = opts.max_rank;
    }
    if opts.seed.is_some() {
        m.seed = opts.seed;
    }
    if opts.seeds.is_some() {
        m.seeds = opts.seeds;
    }
    if opts.budget.is_some() {
        m.budget = opts.budget;
    }
    if let Some(r) = &opts.ring {
        for c in &mut m.cases {
            c.ring = Some(r.clone());
        }
    }
    m.validate(sub.gates())?;
    Ok(m)
}

fn descriptor_name(d: &CaseDescriptor) -> String {
    let j: Vec<String> = d.j.iter().map(usize::to_string).collect();
    let mut s = format!("{} J={{{}}}", d.series, j.join(","));
    if d.gamma.len() > 1 {
        s.push_str(&format!(" Gamma={:?}", d.gamma));
    }
    s
}

pub fn section3_record(row: Section3Row) -> Record {
    Record::with_status(
        descriptor_name(&row.case),
        &row.lemma,
        row.status,
        json!({ "descriptor": row.case, "witness": row.witness }),
    )
}

fn inspect(sys: &RootSystem, series: Series, rank: usize) -> Record {
    let positive = sys.positive_indices().count();
    Record::new(
        sys.name(),
        "root_count",
        sys.len() == series.root_count(rank) && 2 * positive == sys.len(),
        json!({
            "roots": sys.len(),
            "positive": positive,
            "highest_root": sys.highest_roots().iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
            "cartan": sys.cartan(),
            "simple_lengths": sys.simple_lengths(),
            "diagram_automorphisms": sys.automorphisms().order(),
        }),
    )
}

fn entry_failure(c: &CaseEntry, check: &str, e: ManifestError) -> Record {
    Record::skipped(format!("{}{}", c.series, c.rank), check, e.0)
}

fn budget_of(m: &Manifest, c: &CaseEntry, default: usize) -> usize {
    c.budget.or(m.budget).unwrap_or(default)
}

fn per_case(m: &Manifest, f: impl Fn(usize, &CaseEntry) -> Vec<Record> + Sync) -> Vec<Record> {
    let per: Vec<Vec<Record>> = m.cases.par_iter().enumerate().map(|(i, c)| f(i, c)).collect();
    per.into_iter().flatten().collect()
}

fn parse_series(c: &CaseEntry) -> Series {
    c.series().expect("validated")
}

/// All records of one subcommand on a validated manifest, in a
/// deterministic order.
pub fn records(sub: Subcommand, m: &Manifest) -> Vec<Record> {
    let mut out = Vec::new();
    match sub {
        Subcommand::RootsInspect => {
            if let Some(k) = m.max_rank {
                for (s, n) in Series::all_types(k) {
                    out.push(inspect(&RootSystem::build(s, n).expect("supported type"), s, n));
                }
            }
            out.extend(per_case(m, |_, c| match c.root_system() {
                Ok(sys) => vec![inspect(&sys, parse_series(c), c.rank)],
                Err(e) => vec![entry_failure(c, "root_count", e)],
            }));
        }
        Subcommand::RelrootsVerify => {
            let opts = VerifyOptions::default();
            if let Some(k) = m.max_rank {
                out.extend(section3::run(k, opts).into_iter().map(section3_record));
            }
            out.extend(per_case(m, |_, c| match c.projection() {
                Ok(spec) => section3::verify_case(&spec, opts).into_iter().map(section3_record).collect(),
                Err(e) => vec![entry_failure(c, "section3", e)],
            }));
        }
        Subcommand::ConstantsCompute => {
            let mut opts = ConstantsOptions::default();
            if let Some(seed) = m.seed {
                opts.seed = seed;
            }
            if let Some(k) = m.max_rank {
                let o = ConstantsOptions { max_rank: k, ..opts };
                let cases = constants::cases(&o);
                let per: Vec<Record> = cases.par_iter().map(|&(s, n, sym)| constants::run_case(s, n, sym, &o)).collect();
                out.extend(per);
            }
            out.extend(per_case(m, |_, c| {
                let s = parse_series(c);
                let symbolic = c.rank <= opts.symbolic_rank || matches!(s, Series::F | Series::G);
                vec![constants::run_case(s, c.rank, symbolic, &opts)]
            }));
        }
        Subcommand::RelcalcVerify => {
            out.extend(per_case(m, |_, c| {
                let case = match c.rel_case() {
                    Ok(x) => x,
                    Err(e) => return vec![entry_failure(c, "identities", e)],
                };
                let mut opts = RelcalcOptions::default();
                if let Some(seed) = m.seed {
                    opts.seed = seed;
                }
                if let Some(r) = &c.ring {
                    opts.chain_ring = r.clone();
                    opts.abe_rings = vec![r.clone()];
                }
                relcalc::run_case(&case, &opts)
            }));
        }
        Subcommand::SteinbergEnumerate => {
            out.extend(per_case(m, |_, c| {
                let spec = StCaseSpec {
                    series: parse_series(c),
                    rank: c.rank,
                    j: c.j().map(<[usize]>::to_vec),
                    ring: c.ring.clone().expect("validated"),
                    ideal: c.ideal.clone(),
                };
                steinberg::run(&[spec], budget_of(m, c, DEFAULT_BUDGET))
            }));
        }
        Subcommand::LabNormality => {
            let d = LabOptions::default();
            out.extend(per_case(m, |i, c| {
                let opts = LabOptions {
                    seed: m.seed.unwrap_or(d.seed),
                    seeds_per_case: m.seeds.unwrap_or(d.seeds_per_case),
                    budget: budget_of(m, c, d.budget),
                };
                lab::run_case(&lab_spec(c), i, &opts)
            }));
        }
        Subcommand::LabDiameter => {
            out.extend(per_case(m, |_, c| lab::run_diameter_case(&lab_spec(c), budget_of(m, c, DEFAULT_GROUP_BUDGET))));
        }
    }
    out
}

fn lab_spec(c: &CaseEntry) -> LabCaseSpec {
    LabCaseSpec::new(parse_series(c), c.rank, c.j(), c.ring.as_deref().expect("validated"))
}

/// The exit code for a set of records.
pub fn exit_code(records: &[Record], strict: bool) -> i32 {
    if records.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else if strict && records.iter().any(|r| r.overflow) {
        EXIT_OVERFLOW
    } else {
        EXIT_OK
    }
}

pub fn out_dir(opts: &Options, m: &Manifest) -> PathBuf {
    opts.out
        .clone()
        .or_else(|| m.output.as_ref().and_then(|o| o.dir.clone()).map(PathBuf::from))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("reports"))
}

pub fn build_report(sub: Subcommand, m: Manifest) -> Report {
    let start = Instant::now();
    let records = records(sub, &m);
    let timing = Timing { elapsed_ms: start.elapsed().as_millis() as u64, threads: rayon::current_num_threads() };
    Report::new(sub.name(), m, records, timing)
}

/// Run one subcommand end to end and return the process exit code.
pub fn execute(sub: Subcommand, opts: &Options) -> i32 {
    let m = match effective_manifest(sub, opts) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    let dir = out_dir(opts, &m);
    let report = build_report(sub, m);
    match report.write(&dir) {
        Ok(path) => eprintln!("wrote {}", path.display()),
        Err(e) => {
            eprintln!("error: cannot write report to {}: {e}", dir.display());
            return EXIT_INVALID;
        }
    }
    if opts.pretty {
        print!("{}", render_records(&report.records));
    }
    println!("{}: {}", sub.name(), render_rollup(&report.rollup));
    exit_code(&report.records, opts.strict)
}

/// Roll up existing report files.
pub fn summarize(paths: &[PathBuf], strict: bool, pretty: bool) -> i32 {
    let mut rows = Vec::new();
    let mut all = Vec::new();
    for p in paths {
        let r = match Report::load(Path::new(p)) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {}: {e}", p.display());
                return EXIT_INVALID;
            }
        };
        let u = &r.rollup;
        rows.push(vec![
            r.subcommand.clone(),
            r.manifest_hash[..16].to_string(),
            u.total.to_string(),
            u.pass.to_string(),
            u.fail.to_string(),
            u.measured.to_string(),
            u.skipped.to_string(),
            u.overflow.to_string(),
        ]);
        all.extend(r.records);
    }
    print!(
        "{}",
        crate::report::table(&["subcommand", "manifest", "total", "pass", "fail", "measured", "skipped", "overflow"], &rows)
    );
    if pretty {
        let flagged: Vec<Record> = all.iter().filter(|x| x.status == Status::Fail || x.overflow).cloned().collect();
        if !flagged.is_empty() {
            println!();
            print!("{}", render_records(&flagged));
        }
    }
    exit_code(&all, strict)
}
