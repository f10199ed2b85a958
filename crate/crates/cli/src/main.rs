use std::path::PathBuf;
use std::process::ExitCode;

use chevlab_cli::{execute, summarize, Options, Subcommand};
use clap::{Args, Parser, Subcommand as ClapSubcommand};

/// Relative root systems, commutator calculus, Steinberg presentations and
/// finite matrix-group experiments.
#[derive(Parser)]
#[command(name = "chevlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// JSON case manifest; the built-in roster when absent.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Run the full campaign over every type up to this rank.
    #[arg(long, global = true)]
    max_rank: Option<usize>,
    /// Override the ring of every case, e.g. F3, Z/4, "F2[t]/(t^2)".
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Element or coset budget per case.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Seeded normal closures per case.
    #[arg(long, global = true)]
    seeds: Option<usize>,
    /// Global random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Exit with code 3 when an enumeration overflows its budget.
    #[arg(long, global = true)]
    strict: bool,
    /// Report file (*.json) or directory; defaults to $CHEVLAB_OUT_DIR, then ./reports.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print an aligned table of records.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(ClapSubcommand)]
enum Command {
    /// Root system data.
    Roots {
        #[command(subcommand)]
        action: RootsAction,
    },
    /// Relative root system lemmas.
    Relroots {
        #[command(subcommand)]
        action: RelrootsAction,
    },
    /// Structure constants and the commutator formula.
    Constants {
        #[command(subcommand)]
        action: ConstantsAction,
    },
    /// Coefficient maps of the relative commutator calculus.
    Relcalc {
        #[command(subcommand)]
        action: RelcalcAction,
    },
    /// Coset enumeration of Steinberg groups.
    Steinberg {
        #[command(subcommand)]
        action: SteinbergAction,
    },
    /// Matrix-group experiments.
    Lab {
        #[command(subcommand)]
        action: LabAction,
    },
    /// Existing report files.
    Report {
        #[command(subcommand)]
        action: ReportAction,
    },
}

#[derive(ClapSubcommand)]
enum RootsAction {
    Inspect,
}

#[derive(ClapSubcommand)]
enum RelrootsAction {
    Verify,
}

#[derive(ClapSubcommand)]
enum ConstantsAction {
    Compute,
}

#[derive(ClapSubcommand)]
enum RelcalcAction {
    Verify,
}

#[derive(ClapSubcommand)]
enum SteinbergAction {
    Enumerate,
}

#[derive(ClapSubcommand)]
enum LabAction {
    Normality,
    Diameter,
}

#[derive(ClapSubcommand)]
enum ReportAction {
    /// Roll up report files.
    Summarize {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = cli.flags;
    if let Some(n) = f.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let sub = match cli.command {
        Command::Roots { action: RootsAction::Inspect } => Subcommand::RootsInspect,
        Command::Relroots { action: RelrootsAction::Verify } => Subcommand::RelrootsVerify,
        Command::Constants { action: ConstantsAction::Compute } => Subcommand::ConstantsCompute,
        Command::Relcalc { action: RelcalcAction::Verify } => Subcommand::RelcalcVerify,
        Command::Steinberg { action: SteinbergAction::Enumerate } => Subcommand::SteinbergEnumerate,
        Command::Lab { action: LabAction::Normality } => Subcommand::LabNormality,
        Command::Lab { action: LabAction::Diameter } => Subcommand::LabDiameter,
        Command::Report { action: ReportAction::Summarize { reports } } => {
            return ExitCode::from(summarize(&reports, f.strict, f.pretty) as u8);
        }
    };
    let opts = Options {
        manifest: f.manifest,
        max_rank: f.max_rank,
        ring: f.ring,
        budget: f.budget,
        seeds: f.seeds,
        seed: f.seed,
        strict: f.strict,
        out: f.out,
        pretty: f.pretty,
    };
    ExitCode::from(execute(sub, &opts) as u8)
}
