//! Command-line front end. The binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 success, 1 failed check, 2 unreadable input, 3 violated
//! precondition.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::cells::{cell_labels, enumerate_cells, CellTable, KeyKind};
use crate::counting::{count, count_interior};
use crate::error::Error;
use crate::exact::{format_rational_vector, parse_rational_vector, Rational, RationalVector};
use crate::hilbert::{check_hilbert_reciprocity, h_vector_constraints, hilbert_numerator, interior_numerator};
use crate::io::{parse_polytope, CellRecord, QuasiPolynomialReport};
use crate::polytope::Polytope;
use crate::quasipoly::QuasiPolynomial;
use crate::svg::CellMap;
use crate::theorems::{
    automorphisms, check_automorphism_invariance, check_codim1, check_cs_parity, check_maximal_cell_reciprocity,
    check_projection_identity, check_symmetry_characterization, equivalent_up_to_integer_translation,
    fingerprint_distinguishes, grid, lambda_refines, CheckReport, Fingerprint,
};
use crate::translate::{ehr_translated, safe_period, tl, tl_interior};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Output(_) => EXIT_CHECK_FAILED,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => CliError::Parse(msg),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// JSON.
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CellKind {
    Delta,
    Lambda,
}

#[derive(Debug, Parser)]
#[command(name = "toric-ehrhart", version, about = "Ehrhart quasi-polynomials of translated rational polytopes")]
pub struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest accepted dimension.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_dim: usize,
    /// Largest accepted number of facets.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_facets: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Polytope document (JSON with `dimension` and `vertices`).
    pub polytope: PathBuf,
    /// Translation vector such as `17/100,52/100`; defaults to the origin.
    #[arg(long, allow_hyphen_values = true)]
    pub translate: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice points in `tP + v`.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dilate: u64,
        /// Count only interior points.
        #[arg(long)]
        interior: bool,
    },
    /// The translated enumerator `t ↦ #((tP + v) ∩ Z^d)`.
    Tl {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        interior: bool,
    },
    /// The Ehrhart quasi-polynomial of `P + v`.
    Ehrhart {
        #[command(flatten)]
        input: Input,
        /// Report the minimal period instead of `lcm(den P, den v)`.
        #[arg(long)]
        minimize_period: bool,
    },
    /// Cells of the toric arrangement with their enumerators.
    Cells {
        polytope: PathBuf,
        #[arg(long, value_enum, default_value_t = CellKind::Delta)]
        kind: CellKind,
    },
    /// SVG picture of the torus cells of a planar polytope.
    Plot {
        #[command(flatten)]
        input: Input,
        /// Last orbit index drawn.
        #[arg(long, default_value_t = 0)]
        kmax: u64,
        /// Destination file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run identity checks and report each outcome.
    Verify(VerifyArgs),
    /// Numerator of the lattice-point generating function.
    Hilbert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        interior: bool,
    },
}

pub const CHECK_NAMES: &[&str] = &[
    "reciprocity",
    "symmetry",
    "projection",
    "automorphisms",
    "fingerprint",
    "cs-parity",
    "codim1",
    "hilbert",
    "h-vector",
    "partitions",
];

const FINGERPRINT_REFINEMENTS: u64 = 3;

const DEFAULT_CHECKS: &[&str] = &["reciprocity", "symmetry", "projection", "codim1"];

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: Input,
    /// Comma separated subset of the available checks.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Reciprocity between closed and interior counts
    #[arg(long)]
    pub reciprocity: bool,
    /// Symmetry of the enumerator under `v ↦ −v`
    #[arg(long)]
    pub symmetry: bool,
    /// Coordinate projection identity
    #[arg(long)]
    pub projection: bool,
    /// Unimodular automorphisms of P and invariance of the enumerator
    #[arg(long)]
    pub automorphisms: bool,
    /// Compare enumerator fingerprints with a second polytope
    #[arg(long)]
    pub fingerprint: bool,
    /// Sample grid denominator; defaults to twice the denominator of P,
    /// with the fingerprint check also trying a few multiples of it.
    #[arg(long)]
    pub grid: Option<u64>,
    /// Largest dilation used by sampled checks.
    #[arg(long, default_value_t = 10)]
    pub t_max: u64,
    /// Second polytope for the fingerprint check; defaults to `−P`.
    #[arg(long)]
    pub against: Option<PathBuf>,
    /// Entry bound for the automorphism search.
    #[arg(long, default_value_t = 1)]
    pub entry_bound: i64,
}

impl VerifyArgs {
    fn selected(&self) -> Result<Vec<String>, CliError> {
        let mut names: Vec<String> = self.checks.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        let flags = [
            (self.reciprocity, "reciprocity"),
            (self.symmetry, "symmetry"),
            (self.projection, "projection"),
            (self.automorphisms, "automorphisms"),
            (self.fingerprint, "fingerprint"),
        ];
        names.extend(flags.iter().filter(|(on, _)| *on).map(|(_, n)| n.to_string()));
        if names.is_empty() {
            names = DEFAULT_CHECKS.iter().map(|s| s.to_string()).collect();
        }
        if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(&n.as_str())) {
            return Err(CliError::Parse(format!("unknown check `{bad}`; available: {}", CHECK_NAMES.join(", "))));
        }
        let mut seen = Vec::new();
        for n in names {
            if !seen.contains(&n) {
                seen.push(n);
            }
        }
        Ok(seen)
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &Path, cli: &Cli) -> Result<Polytope, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let p = parse_polytope(&text)?;
    if p.dimension() > cli.max_dim {
        return Err(CliError::Precondition(format!(
            "dimension {} exceeds --max-dim {}",
            p.dimension(),
            cli.max_dim
        )));
    }
    if p.num_facets() > cli.max_facets {
        return Err(CliError::Precondition(format!(
            "{} facets exceed --max-facets {}",
            p.num_facets(),
            cli.max_facets
        )));
    }
    Ok(p)
}

fn translation(input: &Input, p: &Polytope) -> Result<RationalVector, CliError> {
    let Some(text) = &input.translate else {
        return Ok(vec![Rational::from_integer(0.into()); p.dimension()]);
    };
    let v = parse_rational_vector(text)?;
    if v.len() != p.dimension() {
        return Err(Error::DimensionMismatch { expected: p.dimension(), found: v.len() }.into());
    }
    Ok(v)
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.into()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn emit_quasi_polynomial(out: &mut dyn Write, format: Format, f: &QuasiPolynomial) -> Result<(), CliError> {
    match format {
        Format::Text => {
            writeln!(out, "period {}", f.period())?;
            writeln!(out, "{f}")?;
        }
        Format::Structured => emit_json(out, &QuasiPolynomialReport::new(f))?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Count { input, dilate, interior } => {
            let p = load(&input.polytope, cli)?;
            let v = translation(input, &p)?;
            let n = if *interior { count_interior(&p, &v, *dilate)? } else { count(&p, &v, *dilate)? };
            match cli.format {
                Format::Text => writeln!(out, "{n}")?,
                Format::Structured => emit_json(out, &json!({ "count": n }))?,
            }
        }
        Command::Tl { input, interior } => {
            let p = load(&input.polytope, cli)?;
            let v = translation(input, &p)?;
            let f = if *interior { tl_interior(&p, &v)? } else { tl(&p, &v)? };
            emit_quasi_polynomial(out, cli.format, &f)?;
        }
        Command::Ehrhart { input, minimize_period } => {
            let p = load(&input.polytope, cli)?;
            let v = translation(input, &p)?;
            let f = ehr_translated(&p, &v)?;
            let f = if *minimize_period {
                f
            } else {
                f.with_period(safe_period(&p, &v)).expect("minimal period divides the safe period")
            };
            emit_quasi_polynomial(out, cli.format, &f)?;
        }
        Command::Cells { polytope, kind } => {
            let p = load(polytope, cli)?;
            cmd_cells(&p, *kind, cli.format, out)?;
        }
        Command::Plot { input, kmax, out: path } => {
            let p = load(&input.polytope, cli)?;
            let v = input.translate.as_ref().map(|_| translation(input, &p)).transpose()?;
            let map = CellMap::new(&p, v.as_deref(), *kmax)?;
            let svg = map.to_svg();
            match path {
                Some(path) => {
                    std::fs::write(path, &svg)?;
                    let summary = json!({
                        "file": path.display().to_string(),
                        "faces": map.faces.len(),
                        "edges": map.edges.len(),
                        "vertices": map.vertices.len(),
                        "orbit": map.orbit.len(),
                    });
                    match cli.format {
                        Format::Text => writeln!(
                            out,
                            "wrote {}: {} faces, {} edges, {} vertices, {} orbit points",
                            path.display(),
                            map.faces.len(),
                            map.edges.len(),
                            map.vertices.len(),
                            map.orbit.len()
                        )?,
                        Format::Structured => emit_json(out, &summary)?,
                    }
                }
                None => write!(out, "{svg}")?,
            }
        }
        Command::Verify(args) => return cmd_verify(cli, args, out),
        Command::Hilbert { input, interior } => {
            let p = load(&input.polytope, cli)?;
            let v = translation(input, &p)?;
            let data = if *interior { interior_numerator(&p, &v)? } else { hilbert_numerator(&p, &v)? };
            match cli.format {
                Format::Text => {
                    writeln!(out, "alpha {}", data.alpha)?;
                    writeln!(out, "period {}", data.period)?;
                    writeln!(out, "dimension {}", data.dimension)?;
                    let coeffs: Vec<String> = data.numerator.iter().map(|c| c.to_string()).collect();
                    writeln!(out, "numerator {}", coeffs.join(" "))?;
                }
                Format::Structured => emit_json(out, &data)?,
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_cells(p: &Polytope, kind: CellKind, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let (cells, enumerators) = match kind {
        CellKind::Delta => {
            let table = CellTable::exhaustive(p.clone())?;
            let cells = table.cells();
            let tls = cells.iter().map(|c| table.tl(&c.key)).collect::<crate::Result<Vec<_>>>()?;
            (cells, tls)
        }
        CellKind::Lambda => {
            let cells = enumerate_cells(p, KeyKind::Lambda)?;
            let tls = cells.iter().map(|c| tl(p, &c.representative)).collect::<crate::Result<Vec<_>>>()?;
            (cells, tls)
        }
    };
    let labels = match kind {
        CellKind::Delta => cell_labels(&cells),
        CellKind::Lambda => (1..=cells.len()).map(|i| format!("R{i}")).collect(),
    };
    match format {
        Format::Text => {
            for ((label, cell), f) in labels.iter().zip(&cells).zip(&enumerators) {
                let display = f.to_string().replace('\n', "; ");
                writeln!(
                    out,
                    "{label}\tdim {}\t{}\trep {}\tTL {display}",
                    cell.dimension,
                    cell.key,
                    format_rational_vector(&cell.representative)
                )?;
            }
        }
        Format::Structured => {
            let records: Vec<CellRecord> = labels
                .into_iter()
                .zip(&cells)
                .zip(&enumerators)
                .map(|((label, cell), f)| CellRecord::new(label, cell, f))
                .collect();
            emit_json(out, &records)?;
        }
    }
    Ok(())
}

fn symmetry_report(p: &Polytope, n: u64) -> crate::Result<CheckReport> {
    let verdict = check_symmetry_characterization(p, n)?;
    let mut report = CheckReport::new("symmetry");
    let detail = format!(
        "geometric criterion {}, sampled symmetry {} over {} grid points{}",
        verdict.geometric,
        verdict.sampled,
        verdict.samples,
        verdict.witness.as_ref().map(|w| format!(", asymmetric at v = {w}")).unwrap_or_default()
    );
    report.record(format!("grid 1/{n}"), verdict.consistent(), detail);
    Ok(report)
}

fn projection_report(p: &Polytope, v: &[Rational], t_max: u64) -> crate::Result<CheckReport> {
    let mut report = CheckReport::new("projection");
    for i in 0..p.dimension() {
        for f in check_projection_identity(p, i, v, t_max)?.findings {
            report.record(format!("coordinate {i}: {}", f.subject), f.passed, f.detail);
        }
    }
    Ok(report)
}

fn automorphism_report(p: &Polytope, bound: i64, n: u64) -> crate::Result<CheckReport> {
    let mut report = CheckReport::new("automorphisms");
    let samples = grid(p.dimension(), n);
    let found = automorphisms(p, bound);
    report.record("search", !found.is_empty(), format!("{} automorphisms with entries in [-{bound}, {bound}]", found.len()));
    for g in &found {
        let r = check_automorphism_invariance(p, g, &samples)?;
        let rows: Vec<String> = g.rows().iter().map(|row| format!("{row:?}")).collect();
        let failures = r.failures().count();
        report.record(
            format!("g = [{}]", rows.join(", ")),
            r.passed,
            format!("{} samples, {failures} mismatches", r.findings.len()),
        );
    }
    Ok(report)
}

/// Grids `1/n, 1/2n, …, 1/(refinements·n)` are tried in turn until one separates.
fn fingerprint_report(p: &Polytope, other: &Polytope, base: u64, refinements: u64) -> crate::Result<CheckReport> {
    let mut report = CheckReport::new("fingerprint");
    let t_max = 3 * p.period().max(other.period());
    let shift = equivalent_up_to_integer_translation(p, other);
    let mut n = base;
    let mut fp = Fingerprint::Indistinguishable;
    for k in 1..=refinements {
        n = k * base;
        fp = fingerprint_distinguishes(p, other, n, t_max)?;
        if fp != Fingerprint::Indistinguishable {
            break;
        }
    }
    let (passed, detail) = match (&shift, &fp) {
        (Some(w), Fingerprint::Indistinguishable) => (true, format!("integer translate by {w:?}; counts agree")),
        (None, Fingerprint::Separated { v, t, left, right }) => {
            (true, format!("not integer translates; separated at v = {v}, t = {t} ({left} vs {right})"))
        }
        (Some(w), Fingerprint::Separated { v, t, .. }) => {
            (false, format!("integer translate by {w:?} yet separated at v = {v}, t = {t}"))
        }
        (None, Fingerprint::Indistinguishable) => {
            (false, format!("not integer translates but no separator on grid 1/{n}, t ≤ {t_max}"))
        }
    };
    report.record(format!("grid 1/{n}"), passed, detail);
    Ok(report)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let names = args.selected()?;
    let p = load(&args.input.polytope, cli)?;
    let v = translation(&args.input, &p)?;
    let n = args.grid.unwrap_or(2 * p.period());
    if n == 0 {
        return Err(CliError::Precondition("--grid must be positive".into()));
    }
    let mut reports = Vec::new();
    for name in &names {
        let report = match name.as_str() {
            "reciprocity" => check_maximal_cell_reciprocity(&p)?,
            "symmetry" => symmetry_report(&p, n)?,
            "projection" => projection_report(&p, &v, args.t_max)?,
            "automorphisms" => automorphism_report(&p, args.entry_bound, n)?,
            "fingerprint" => {
                let other = match &args.against {
                    Some(path) => load(path, cli)?,
                    None => p.negate(),
                };
                let refinements = if args.grid.is_some() { 1 } else { FINGERPRINT_REFINEMENTS };
                fingerprint_report(&p, &other, n, refinements)?
            }
            "cs-parity" => check_cs_parity(&p)?,
            "codim1" => check_codim1(&p)?,
            "hilbert" => check_hilbert_reciprocity(&p, &v)?,
            "h-vector" => h_vector_constraints(&p, &v)?,
            "partitions" => {
                let mut r = CheckReport::new("partitions");
                r.record("lambda refines delta", lambda_refines(&p)?, "every region is a union of delta cells");
                r
            }
            _ => unreachable!("names are validated"),
        };
        reports.push(report);
    }
    let passed = reports.iter().all(|r| r.passed);
    match cli.format {
        Format::Text => {
            for r in &reports {
                writeln!(out, "{}: {} ({} findings)", r.check, if r.passed { "PASS" } else { "FAIL" }, r.findings.len())?;
                for f in &r.findings {
                    if !f.passed || r.findings.len() == 1 {
                        writeln!(out, "  {}: {}", f.subject, f.detail)?;
                    }
                }
            }
        }
        Format::Structured => emit_json(out, &json!({ "passed": passed, "reports": reports }))?,
    }
    Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}
