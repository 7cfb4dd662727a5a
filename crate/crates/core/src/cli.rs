//! Command-line front end.
//!
//! Exit codes: 0 pass, 2 usage or bad parameters, 3 verification failure,
//! 4 I/O or parse failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::arrays::{check_dm, check_nested, check_oa, NestMode, Verdict};
use crate::catalog::{self, CheckKind, MatrixDoc, Payload};
use crate::error::Error;
use crate::io::{self, DesignMeta, Kind};
use crate::nsfd::{self, Jitter, Ranking};
use crate::registry::{self, Output, CONSTRUCTIONS};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAIL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "nestfill", version, about = "Nested orthogonal arrays, difference matrices and space-filling designs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named construction, verify it, and write CSV and JSON.
    Construct {
        /// Construction name, e.g. theorem1 or qtw.
        name: String,
        /// Parameters as key=value.
        params: Vec<String>,
        /// Output prefix; writes <out>.csv and <out>.json.
        #[arg(long)]
        out: PathBuf,
        /// TOML plan for thm7, thm8, lemma7 and thm9.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Check an array file.
    Verify {
        kind: VerifyKind,
        /// Array CSV or its prefix.
        path: PathBuf,
    },
    /// Turn a nested array into a nested Latin hypercube design.
    Lhd {
        /// Prefix written by construct or export.
        input: PathBuf,
        /// Seed for uniform jitter within cells.
        #[arg(long, conflicts_with = "midpoint")]
        seed: Option<u64>,
        /// Place every point at its cell midpoint.
        #[arg(long)]
        midpoint: bool,
        /// Seed for ordering ranks within each level; row order otherwise.
        #[arg(long)]
        rank_seed: Option<u64>,
        /// Output prefix; writes <out>_low.csv, <out>_high.csv, <out>_meta.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a catalog entry as CSV and JSON.
    Export {
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Browse the built-in matrices.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// List constructions, or describe one.
    Info { name: Option<String> },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Oa,
    Dm,
    Noa,
    Ndm,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Format(_) | Error::ParseElement { .. } | Error::ParseGroup(_) => EXIT_IO,
            Error::NotVerified(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Errors while reading inputs are I/O failures whatever their cause.
fn reading(e: Error) -> Failure {
    Failure { code: EXIT_IO, message: e.to_string() }
}

type Outcome = std::result::Result<i32, Failure>;

fn report(out: &mut dyn Write, verdict: &Verdict) -> Outcome {
    let _ = writeln!(out, "{verdict}");
    Ok(if verdict.is_pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn construct(out: &mut dyn Write, name: &str, params: &[String], prefix: &Path, plan: Option<&Path>) -> Outcome {
    let plan_text = plan
        .map(|p| std::fs::read_to_string(p).map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", p.display()) }))
        .transpose()?;
    let args: Vec<&str> = params.iter().map(String::as_str).collect();
    let built = registry::build_args(name, &args, plan_text.as_deref())?;
    let verdict = built.verdict()?;
    let a = built.output.array();
    let _ = match built.output.nested() {
        Some(p) => writeln!(out, "{}: {}x{} parent, {} child runs", built.invocation, a.rows(), a.cols(), p.child_rows().len()),
        None => writeln!(out, "{}: {}x{}", built.invocation, a.rows(), a.cols()),
    };
    if !verdict.is_pass() {
        return report(out, &verdict);
    }
    let source = Some(built.invocation.as_str());
    match &built.output {
        Output::Nested { pair, mode } => io::save_nested(prefix, pair, *mode, source)?,
        Output::Mixed(m) => io::save_array(prefix, &m.combined(), Kind::Paired, source)?,
    }
    for (role, extra) in &built.extras {
        io::save_array(&suffixed(prefix, &format!("_{role}")), extra, Kind::Oa, source)?;
    }
    report(out, &verdict)
}

fn verify(out: &mut dyn Write, kind: VerifyKind, path: &Path) -> Outcome {
    let loaded = io::load(path).map_err(reading)?;
    let verdict = match kind {
        VerifyKind::Oa => check_oa(&loaded.array),
        VerifyKind::Dm => check_dm(&loaded.array)?,
        VerifyKind::Noa | VerifyKind::Ndm => {
            let pair = loaded
                .nested()
                .map_err(reading)?
                .ok_or_else(|| Failure { code: EXIT_IO, message: format!("{}: no nesting data in sidecar", path.display()) })?;
            let mode = if kind == VerifyKind::Noa { NestMode::Oa } else { NestMode::Dm };
            check_nested(&pair, mode)?
        }
    };
    report(out, &verdict)
}

fn lhd(out: &mut dyn Write, input: &Path, seed: Option<u64>, midpoint: bool, rank_seed: Option<u64>, prefix: &Path) -> Outcome {
    let jitter = match (seed, midpoint) {
        (Some(s), false) => Jitter::Uniform(s),
        (None, true) => Jitter::Midpoint,
        _ => return Err(usage("lhd needs exactly one of --seed or --midpoint")),
    };
    let ranking = rank_seed.map_or(Ranking::RowOrder, Ranking::Seeded);
    let loaded = io::load(input).map_err(reading)?;
    let pair = loaded
        .nested()
        .map_err(reading)?
        .ok_or_else(|| usage(format!("{}: no nesting data; lhd needs a nested array", input.display())))?;
    let relabeled = nsfd::relabel(&pair)?;
    let design = nsfd::nested_design(&pair, ranking, jitter)?;
    io::write_atomic(&suffixed(prefix, "_low.csv"), &io::design_csv(&design.low)?)?;
    io::write_atomic(&suffixed(prefix, "_high.csv"), &io::design_csv(&design.high)?)?;
    let meta = DesignMeta {
        source: loaded.meta.source.clone(),
        ranking,
        jitter,
        runs: design.low.rows(),
        levels: relabeled.levels().to_vec(),
        child_levels: relabeled.child_levels(),
        child_runs: design.child_rows.iter().map(|r| r + 1).collect(),
    };
    io::save_json(&suffixed(prefix, "_meta.json"), &meta)?;
    let mut all_uniform = true;
    for (label, d, grid) in [
        ("low", &design.low, relabeled.levels().to_vec()),
        ("high", &design.high, relabeled.child_levels()),
    ] {
        let checks = nsfd::bivariate_checks(d, &grid)?;
        let good = checks.iter().filter(|c| c.uniform).count();
        let _ = writeln!(out, "{label}: {} points, {good}/{} column pairs uniform", d.rows(), checks.len());
        for c in checks.iter().filter(|c| !c.uniform) {
            let _ = writeln!(out, "  x{},x{} not uniform on {}x{}", c.cols.0 + 1, c.cols.1 + 1, c.grid.0, c.grid.1);
        }
        all_uniform &= good == checks.len();
    }
    Ok(if all_uniform { EXIT_PASS } else { EXIT_FAIL })
}

fn entry_kind(e: &catalog::CatalogEntry) -> Kind {
    match (&e.payload, e.doc.as_ref().map(|d| d.check)) {
        (Payload::Nested(_), _) => Kind::Ndm,
        (_, Some(CheckKind::Oa)) => Kind::Oa,
        (_, Some(CheckKind::None)) => Kind::None,
        _ => Kind::Dm,
    }
}

fn export(out: &mut dyn Write, name: &str, prefix: &Path) -> Outcome {
    let e = catalog::get(name)?;
    let source = Some(name);
    match &e.payload {
        Payload::Nested(p) => io::save_nested(prefix, p, NestMode::Dm, source)?,
        Payload::Array(a) => io::save_array(prefix, a, entry_kind(&e), source)?,
    }
    let a = e.array();
    let _ = writeln!(out, "{name}: {}x{}", a.rows(), a.cols());
    Ok(EXIT_PASS)
}

fn catalog_cmd(out: &mut dyn Write, action: &CatalogAction) -> Outcome {
    match action {
        CatalogAction::List => {
            for (name, desc) in catalog::list() {
                let _ = writeln!(out, "{name:<18} {desc}");
            }
        }
        CatalogAction::Show { name } => {
            let e = catalog::get(name)?;
            let doc = e.doc.clone().unwrap_or_else(|| MatrixDoc {
                name: e.name.clone(),
                description: e.description.clone(),
                check: CheckKind::Dm,
                offset: 0,
                columns: None,
                array: e.array().clone(),
            });
            let _ = write!(out, "{}", catalog::format::write(&doc));
            if let Some(p) = e.nested() {
                let runs: Vec<String> = p.child_rows().iter().map(|r| (r + 1).to_string()).collect();
                let _ = writeln!(out, "child rows: {}", runs.join(" "));
                let _ = writeln!(out, "projection: {}", p.projections()[0].describe());
            }
        }
    }
    Ok(EXIT_PASS)
}

fn info(out: &mut dyn Write, name: Option<&str>) -> Outcome {
    match name {
        None => {
            for (n, params, summary) in CONSTRUCTIONS {
                let _ = writeln!(out, "{n:<11} {params}\n            {summary}");
            }
        }
        Some(n) => {
            let (n, params, summary) = CONSTRUCTIONS
                .iter()
                .find(|(c, _, _)| *c == n)
                .ok_or_else(|| usage(format!("unknown construction {n:?}")))?;
            let _ = writeln!(out, "{n} {params}\n{summary}");
        }
    }
    Ok(EXIT_PASS)
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Construct { name, params, out: prefix, plan } => construct(out, name, params, prefix, plan.as_deref()),
        Command::Verify { kind, path } => verify(out, *kind, path),
        Command::Lhd { input, seed, midpoint, rank_seed, out: prefix } => {
            lhd(out, input, *seed, *midpoint, *rank_seed, prefix)
        }
        Command::Export { name, out: prefix } => export(out, name, prefix),
        Command::Catalog { action } => catalog_cmd(out, action),
        Command::Info { name } => info(out, name.as_deref()),
    }
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
