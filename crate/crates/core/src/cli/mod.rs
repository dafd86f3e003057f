//! Command-line front end: expression parsing, JSON documents, subcommands.
//!
//! Reports go to stdout as JSON, diagnostics to stderr. Exit codes: 0 on
//! success, 1 when a verification fails, 2 for parse and usage errors.

pub mod doc;
pub mod gallery;
pub mod parse;
mod synth;
pub mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub use doc::{DocError, ParsedDoc, SystemDoc};
pub use gallery::{load_fixtures, run_gallery, FixtureOutcome, FixtureRecord, BUILTIN_FIXTURES};
pub use parse::{parse_poly, parse_poly_with, ParseError};
pub use synth::synthesize;

use crate::builder::{invariant_lines, invariant_lines_f64, Line, LineReport};
use crate::invariance::{cofactor, darboux_search, find_invariant_curve, InvarianceError, Verdict};
use crate::ratpoly::{parse_rat, to_f64, MPoly};
use crate::topo_bounds::{
    count_ovals, enclosing_window, harnack_bound, limit_cycle_bounds, line_count_bounds,
    poincare_bounds, Window,
};

/// Largest degree accepted by `bounds`; keeps every bound inside `u128`.
pub const MAX_BOUNDS_DEGREE: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "forge", version, about = "Polynomial vector fields with prescribed invariant curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SynthMode {
    Curves,
    Circles,
    TwoNests,
    Separable,
    LeadingTerm,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cofactor of every curve in a system document.
    Check { doc: PathBuf },
    /// Build a system from a construction spec, self-checked.
    Synthesize {
        #[arg(long, value_enum)]
        mode: SynthMode,
        spec: PathBuf,
    },
    /// Exponent relations among the cofactors of the document's curves.
    Darboux { doc: PathBuf },
    /// Search for invariant curves of a given degree and cofactor degree.
    FindCurve {
        doc: PathBuf,
        #[arg(long)]
        deg_g: u32,
        #[arg(long)]
        deg_k: u32,
    },
    /// Invariant straight lines with parameters bounded by `--max-abs`.
    Lines {
        doc: PathBuf,
        #[arg(long, default_value = "10")]
        max_abs: String,
    },
    /// Count the ovals of each curve in a window.
    Ovals {
        doc: PathBuf,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<[f64; 4]>,
        #[arg(long, default_value_t = 512)]
        res: usize,
    },
    /// Degree bounds for fields of degree n.
    Bounds { n: u64 },
    /// Run the fixture gallery.
    Gallery {
        #[arg(long)]
        filter: Option<String>,
        /// Fixture file to use instead of the built-in one.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Write an SVG of the curves and, optionally, streamlines.
    Plot {
        doc: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<[f64; 4]>,
        #[arg(long, default_value_t = 256)]
        res: usize,
        #[arg(long)]
        streamlines: bool,
    },
}

fn parse_window(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected x0,x1,y0,y1, got `{s}`"));
    }
    let mut out = [0.0; 4];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
    }
    Ok(out)
}

fn window(w: [f64; 4], res: usize) -> Result<Window, CliError> {
    Window::new(w[0], w[1], w[2], w[3], res).map_err(usage)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_doc(path: &Path) -> Result<SystemDoc, CliError> {
    SystemDoc::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn exact(doc: &SystemDoc) -> Result<ParsedDoc, CliError> {
    doc.parse().map_err(usage)
}

fn with_curves(doc: &SystemDoc) -> Result<ParsedDoc, CliError> {
    let p = exact(doc)?;
    if p.curves.is_empty() {
        return Err(usage(DocError::NoCurves));
    }
    Ok(p)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(value).map_err(usage)?;
    writeln!(out, "{s}").map_err(usage)
}

/// Per-curve result of `check`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub curve: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cofactor: Option<String>,
    pub remainder: String,
}

/// Cofactor report for every curve of a parsed document.
pub fn check_reports(p: &ParsedDoc) -> Result<Vec<CurveReport>, InvarianceError> {
    p.curves
        .iter()
        .map(|g| {
            let r = cofactor(g, &p.field)?;
            Ok(CurveReport {
                curve: g.to_string(),
                verdict: r.verdict,
                cofactor: r.cofactor.map(|k| k.to_string()),
                remainder: r.remainder.to_string(),
            })
        })
        .collect()
}

fn cmd_check(doc: &SystemDoc, out: &mut dyn Write) -> Result<(), CliError> {
    let p = with_curves(doc)?;
    let reports = check_reports(&p).map_err(usage)?;
    emit(out, &reports)?;
    let bad: Vec<usize> = (0..reports.len())
        .filter(|&i| reports[i].verdict != Verdict::Invariant)
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("curves {bad:?} are not invariant")))
    }
}

#[derive(Serialize)]
struct DarbouxOut {
    cofactors: Vec<String>,
    exponent_basis: Vec<Vec<String>>,
}

fn cmd_darboux(doc: &SystemDoc, out: &mut dyn Write) -> Result<(), CliError> {
    let p = with_curves(doc)?;
    let basis = match darboux_search(&p.curves, &p.field) {
        Ok(b) => b,
        Err(e @ InvarianceError::NotInvariant { .. }) => {
            return Err(CliError::Verification(e.to_string()))
        }
        Err(e) => return Err(usage(e)),
    };
    let cofactors = p
        .curves
        .iter()
        .map(|g| cofactor(g, &p.field).map(|r| r.cofactor.expect("checked").to_string()))
        .collect::<Result<_, _>>()
        .map_err(usage)?;
    let exponent_basis: Vec<Vec<String>> = basis
        .iter()
        .map(|c| c.exponents.iter().map(|e| e.to_string()).collect())
        .collect();
    let empty = exponent_basis.is_empty();
    emit(out, &DarbouxOut { cofactors, exponent_basis })?;
    if empty {
        Err(CliError::Verification("no exponent relation among the cofactors".into()))
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct Found {
    curve: String,
    cofactor: String,
}

fn cmd_find_curve(doc: &SystemDoc, deg_g: u32, deg_k: u32, out: &mut dyn Write) -> Result<(), CliError> {
    let p = exact(doc)?;
    if p.field.dim() != 2 {
        return Err(usage("find-curve needs a planar field"));
    }
    if deg_g == 0 {
        return Err(usage("--deg-g must be at least 1"));
    }
    let found: Vec<Found> = find_invariant_curve(&p.field, deg_g, deg_k)
        .into_iter()
        .map(|(g, k)| Found {
            curve: g.to_string(),
            cofactor: k.to_string(),
        })
        .collect();
    let none = found.is_empty();
    emit(out, &found)?;
    if none {
        Err(CliError::Verification(format!(
            "no invariant curve of degree {deg_g} with cofactor degree {deg_k} found"
        )))
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum LineOut {
    Slope {
        k: f64,
        l: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        exact: Option<[String; 2]>,
    },
    Vertical {
        c: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        exact: Option<String>,
    },
}

#[derive(Serialize)]
struct LinesOut {
    count: usize,
    lines: Vec<LineOut>,
    non_isolated: bool,
    degenerate_top: bool,
    max_residual: f64,
}

impl From<&LineReport> for LinesOut {
    fn from(r: &LineReport) -> Self {
        LinesOut {
            count: r.count(),
            lines: r
                .lines
                .iter()
                .map(|l| match l {
                    Line::Slope { k, l, exact } => LineOut::Slope {
                        k: *k,
                        l: *l,
                        exact: exact.as_ref().map(|(a, b)| [a.to_string(), b.to_string()]),
                    },
                    Line::Vertical { c, exact } => LineOut::Vertical {
                        c: *c,
                        exact: exact.as_ref().map(|e| e.to_string()),
                    },
                })
                .collect(),
            non_isolated: r.non_isolated,
            degenerate_top: r.degenerate_top,
            max_residual: r.max_residual,
        }
    }
}

fn cmd_lines(doc: &SystemDoc, max_abs: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let bound = parse_rat(max_abs.trim())
        .filter(|r| *r > num_traits::Zero::zero())
        .ok_or_else(|| usage(format!("--max-abs must be a positive rational, got `{max_abs}`")))?;
    let (report, degree) = if doc.is_float() {
        let (p, q, _) = doc.parse_float().map_err(usage)?;
        let d = p.degree().max(q.degree());
        (invariant_lines_f64(&p, &q, to_f64(&bound)), d)
    } else {
        let p = exact(doc)?;
        let r = invariant_lines(&p.field, &bound).map_err(usage)?;
        (r, p.field.degree())
    };
    if report.non_isolated {
        writeln!(err, "warning: the field has a one-parameter family of invariant lines").ok();
    }
    if degree >= 2 {
        if let Ok((_, conj)) = line_count_bounds(degree as u64) {
            if report.count() as u128 > conj {
                writeln!(err, "note: {} lines exceed the conjectured maximum {conj}", report.count()).ok();
            }
        }
    }
    emit(out, &LinesOut::from(&report))
}

#[derive(Serialize)]
struct OvalsOut {
    curve: String,
    degree: u32,
    window: [f64; 4],
    ovals: usize,
    touching_boundary: usize,
    harnack: u128,
}

fn cmd_ovals(
    doc: &SystemDoc,
    win: Option<[f64; 4]>,
    res: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let p = with_curves(doc)?;
    if p.vars.len() != 2 {
        return Err(usage("ovals needs planar curves"));
    }
    let mut reports = Vec::new();
    let mut over = Vec::new();
    for (i, g) in p.curves.iter().enumerate() {
        let w = match win {
            Some(w) => window(w, res)?,
            None => enclosing_window(g, res).map_err(usage)?.ok_or_else(|| {
                usage(format!("curve {i} may be unbounded; pass --window x0,x1,y0,y1"))
            })?,
        };
        let c = count_ovals(g, &w).map_err(usage)?;
        if let Some(msg) = c.warning() {
            writeln!(err, "warning: curve {i}: {msg}").ok();
        }
        let harnack = harnack_bound(g.degree().max(1) as u64).map_err(usage)?;
        if c.ovals as u128 > harnack {
            over.push(i);
            writeln!(
                err,
                "warning: curve {i}: {} ovals exceed the bound {harnack} for degree {}; the curve is singular or the grid too coarse",
                c.ovals,
                g.degree()
            )
            .ok();
        }
        reports.push(OvalsOut {
            curve: g.to_string(),
            degree: g.degree(),
            window: [w.x_min, w.x_max, w.y_min, w.y_max],
            ovals: c.ovals,
            touching_boundary: c.touching_boundary,
            harnack,
        });
    }
    emit(out, &reports)?;
    if over.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("curves {over:?} exceed the oval bound")))
    }
}

/// All degree bounds for fields of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: u64,
    pub poincare: [u128; 2],
    pub harnack: u128,
    pub limit_cycles: [u128; 2],
    pub lines: [u128; 2],
}

pub fn bounds_report(n: u64) -> Result<BoundsReport, CliError> {
    if n > MAX_BOUNDS_DEGREE {
        return Err(usage(format!("degree {n} exceeds {MAX_BOUNDS_DEGREE}")));
    }
    let (p0, p1) = poincare_bounds(n).map_err(usage)?;
    let (c0, c1) = limit_cycle_bounds(n).map_err(usage)?;
    let (l0, l1) = line_count_bounds(n).map_err(usage)?;
    Ok(BoundsReport {
        n,
        poincare: [p0, p1],
        harnack: harnack_bound(n).map_err(usage)?,
        limit_cycles: [c0, c1],
        lines: [l0, l1],
    })
}

fn cmd_gallery(
    filter: Option<&str>,
    fixtures: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let src = match fixtures {
        Some(p) => read(p)?,
        None => BUILTIN_FIXTURES.to_string(),
    };
    let records = load_fixtures(&src).map_err(usage)?;
    let outcomes = run_gallery(&records, filter);
    if outcomes.is_empty() {
        writeln!(err, "warning: no fixture matches the filter").ok();
    }
    for o in &outcomes {
        let status = match o.status {
            gallery::Status::Verified => "verified",
            gallery::Status::KnownDiscrepancy => "known-discrepancy",
        };
        let verdict = if o.expected { "ok" } else { "UNEXPECTED" };
        writeln!(err, "{:<24} {:<18} {}", o.id, status, verdict).ok();
        if !o.expected {
            for f in &o.failures {
                writeln!(err, "    {f}").ok();
            }
        }
    }
    emit(out, &outcomes)?;
    let bad: Vec<&str> = outcomes.iter().filter(|o| !o.expected).map(|o| o.id.as_str()).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("fixtures in an unexpected state: {}", bad.join(", "))))
    }
}

#[derive(Serialize)]
struct PlotOut {
    out: String,
    window: [f64; 4],
    curve_polylines: usize,
    streamlines: usize,
}

fn cmd_plot(
    doc: &SystemDoc,
    path: &Path,
    win: Option<[f64; 4]>,
    res: usize,
    streamlines: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let p = exact(doc)?;
    if p.field.dim() != 2 {
        return Err(usage(format!("plot needs a planar field, got dimension {}", p.field.dim())));
    }
    let w = match win {
        Some(w) => window(w, res)?,
        None => {
            let product = p
                .curves
                .iter()
                .fold(MPoly::one(&p.vars), |acc, g| &acc * g);
            let auto = if p.curves.is_empty() {
                None
            } else {
                enclosing_window(&product, res).map_err(usage)?
            };
            match auto {
                Some(w) => Window::new(w.x_min * 1.1, w.x_max * 1.1, w.y_min * 1.1, w.y_max * 1.1, res)
                    .map_err(usage)?,
                None => Window::square(10.0, res).map_err(usage)?,
            }
        }
    };
    let svg = svg::plot_svg(&p.field, &p.curves, &svg::PlotOptions { window: w, streamlines })
        .map_err(usage)?;
    std::fs::write(path, &svg).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    emit(
        out,
        &PlotOut {
            out: path.display().to_string(),
            window: [w.x_min, w.x_max, w.y_min, w.y_max],
            curve_polylines: svg.matches(r#"class="curve""#).count(),
            streamlines: svg.matches(r#"class="streamline""#).count(),
        },
    )
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Check { doc } => cmd_check(&read_doc(&doc)?, out),
        Command::Synthesize { mode, spec } => {
            let (doc, cofactors) = synthesize(mode, &read(&spec)?)?;
            for (i, k) in cofactors.iter().enumerate() {
                writeln!(err, "cofactor g{i}: {k}").ok();
            }
            emit(out, &doc)
        }
        Command::Darboux { doc } => cmd_darboux(&read_doc(&doc)?, out),
        Command::FindCurve { doc, deg_g, deg_k } => cmd_find_curve(&read_doc(&doc)?, deg_g, deg_k, out),
        Command::Lines { doc, max_abs } => cmd_lines(&read_doc(&doc)?, &max_abs, out, err),
        Command::Ovals { doc, window, res } => cmd_ovals(&read_doc(&doc)?, window, res, out, err),
        Command::Bounds { n } => emit(out, &bounds_report(n)?),
        Command::Gallery { filter, fixtures } => {
            cmd_gallery(filter.as_deref(), fixtures.as_deref(), out, err)
        }
        Command::Plot {
            doc,
            out: path,
            window,
            res,
            streamlines,
        } => cmd_plot(&read_doc(&doc)?, &path, window, res, streamlines, out),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                write!(out, "{text}").ok();
            } else {
                write!(err, "{text}").ok();
            }
            return code;
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(()) => 0,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
