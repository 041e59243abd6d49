//! Command-line front end. The `cogirth` binary is a thin wrapper around
//! [`run`].
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 resource cap or rank
//! zero, 4 a verifier found an inconsistency.

pub mod file;
mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cogirth::cogirth;
use crate::error::{Error, Result};
use crate::geometry::ProjectivePointSet;
use crate::gf::FieldSpec;
use crate::verify::{
    check_condition_iii_prime, check_main_theorem, check_pg_proposition, check_rank2,
    paper_example, scan, verify_auto, Phase, ScanMode, ScanReport, ScanSpec,
};
use crate::{Fraction, Matroid, Report};

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "cogirth",
    version,
    about = "Weighted cogirth and extremal bounds for GF(q)-represented matroids"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a geometry as a matroid file.
    Construct {
        #[arg(value_enum)]
        kind: GeometryKind,
        #[arg(long)]
        r: usize,
        /// Rank of the deleted flat (boseburton only).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        q: u32,
        /// Destination file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted cogirth of a matroid file.
    Cogirth { path: PathBuf },
    /// Check the applicable bound on a matroid file.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::Auto)]
        check: Which,
    },
    /// The worked example on PG(3,2) minus a point.
    PaperExample {
        #[arg(value_enum)]
        phase: Phase,
    },
    /// Run the checks over a family of instances.
    Scan {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        r_min: usize,
        #[arg(long)]
        r_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Instances per rank in random mode.
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        weight_max: u64,
        /// Skip the cogirth oracle comparison.
        #[arg(long)]
        no_oracle: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryKind {
    Pg,
    Ag,
    Boseburton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Auto,
    Main,
    Pg,
    Rank2,
    Iiiprime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Random,
}

/// Output of the cogirth command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CogirthResult {
    pub q: u32,
    pub elements: usize,
    pub rank: usize,
    pub total_weight: u64,
    pub cogirth: u64,
    #[serde(with = "crate::verify::fraction")]
    pub ratio: Fraction,
    pub witness_labels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Content {
    Construct {
        q: u32,
        rank: usize,
        elements: usize,
        file: String,
    },
    Cogirth(CogirthResult),
    Report(Box<Report>),
    Scan {
        spec: ScanSpec,
        report: ScanReport,
    },
}

/// One structured document per invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub content: Content,
}

impl ReportDocument {
    pub fn new(content: Content) -> Self {
        Self {
            schema: SCHEMA,
            content,
        }
    }

    /// False when a verifier reported an inconsistency.
    pub fn passed(&self) -> bool {
        match &self.content {
            Content::Report(r) => r.passed(),
            Content::Scan { report, .. } => report.passed(),
            _ => true,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::EnumerationCap { .. } | Error::SizeCap(_) | Error::RankZero => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

pub fn cmd_construct(kind: GeometryKind, r: usize, k: Option<usize>, q: u32) -> Result<Matroid> {
    let field = FieldSpec::new(q)?;
    let points = match (kind, k) {
        (GeometryKind::Pg, None) => ProjectivePointSet::pg(&field, r)?,
        (GeometryKind::Ag, None) => ProjectivePointSet::ag(&field, r)?,
        (GeometryKind::Boseburton, Some(k)) => ProjectivePointSet::bose_burton(&field, r, k)?,
        (GeometryKind::Boseburton, None) => {
            return Err(Error::InvalidParameter("boseburton needs --k".into()))
        }
        (_, Some(_)) => {
            return Err(Error::InvalidParameter(
                "--k applies to boseburton only".into(),
            ))
        }
    };
    if points.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "geometry of rank {r} has no points"
        )));
    }
    Ok(points.to_matroid())
}

pub fn cmd_cogirth(m: &Matroid) -> Result<CogirthResult> {
    let (g, witness) = cogirth(m)?;
    let w = m.total_weight();
    Ok(CogirthResult {
        q: m.field().q(),
        elements: m.len(),
        rank: m.rank(),
        total_weight: w,
        cogirth: g,
        ratio: Fraction::new(w, g),
        witness_labels: witness.support_labels(m),
    })
}

/// `auto` picks the statement that applies; the others simplify the matroid
/// (after rejecting loops) and run the named check.
pub fn cmd_verify(m: &Matroid, which: Which) -> Result<Report> {
    if which == Which::Auto {
        return verify_auto(m);
    }
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(Error::HasLoops(loops));
    }
    let s = m.simplify()?;
    match which {
        Which::Main => check_main_theorem(&s),
        Which::Pg => check_pg_proposition(&s),
        Which::Rank2 => check_rank2(&s),
        Which::Iiiprime | Which::Auto => check_condition_iii_prime(&s),
    }
}

pub fn cmd_paper_example(phase: Phase) -> Report {
    paper_example(phase)
}

pub fn cmd_scan(spec: &ScanSpec) -> Result<ScanReport> {
    scan::<u64>(spec)
}

fn read_matroid(path: &PathBuf) -> Result<Matroid> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })?;
    file::parse_matroid(&text)
}

fn execute(command: Command) -> Result<ReportDocument> {
    let content = match command {
        Command::Construct { kind, r, k, q, out } => {
            let m = cmd_construct(kind, r, k, q)?;
            let text = file::write_matroid(&m);
            if let Some(path) = out {
                std::fs::write(&path, &text)
                    .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
            }
            Content::Construct {
                q,
                rank: m.rank(),
                elements: m.len(),
                file: text,
            }
        }
        Command::Cogirth { path } => Content::Cogirth(cmd_cogirth(&read_matroid(&path)?)?),
        Command::Verify { path, check } => {
            Content::Report(Box::new(cmd_verify(&read_matroid(&path)?, check)?))
        }
        Command::PaperExample { phase } => Content::Report(Box::new(cmd_paper_example(phase))),
        Command::Scan {
            q,
            r_min,
            r_max,
            mode,
            count,
            seed,
            weight_max,
            no_oracle,
        } => {
            let mode = match mode {
                Mode::Exhaustive => ScanMode::Exhaustive,
                Mode::Random => ScanMode::Random { count, seed },
            };
            let spec = ScanSpec {
                q,
                r_min,
                r_max,
                mode,
                weight_max,
                oracle: !no_oracle,
            };
            let report = cmd_scan(&spec)?;
            Content::Scan { spec, report }
        }
    };
    Ok(ReportDocument::new(content))
}

/// Runs one invocation, writing the document to `out` and diagnostics to
/// standard error. Returns the exit code.
pub fn run(cli: Cli, out: &mut impl Write) -> i32 {
    let to_stdout = !matches!(&cli.command, Command::Construct { out: Some(_), .. });
    let doc = match execute(cli.command) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n",
        Format::Text => render::text(&doc, to_stdout),
    };
    if let Err(e) = out.write_all(text.as_bytes()) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    if doc.passed() {
        EXIT_OK
    } else {
        eprintln!("inconsistency detected");
        EXIT_INCONSISTENT
    }
}
