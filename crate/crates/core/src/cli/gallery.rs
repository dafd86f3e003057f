//! Fixture gallery: worked examples recorded as printed identities plus,
//! where those fail, re-derived identities that must hold.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::doc::{DocError, SystemDoc};
use super::parse::parse_poly_with;
use crate::brackets::bracket2;
use crate::builder::{invariant_lines_f64, Line};
use crate::invariance::{cofactor, darboux_search};
use crate::ratpoly::{make_vars, MPoly, Rat};

/// The shipped fixture file.
pub const BUILTIN_FIXTURES: &str = include_str!("../../fixtures/gallery.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    KnownDiscrepancy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Float,
}

type Sample = BTreeMap<String, String>;

fn one_empty_sample() -> Vec<Sample> {
    vec![Sample::new()]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Check {
    /// Every curve of `doc` is invariant; with `cofactors`, the cofactors
    /// also equal the given polynomials.
    Cofactor {
        doc: SystemDoc,
        #[serde(default = "one_empty_sample")]
        samples: Vec<Sample>,
        #[serde(default)]
        cofactors: Option<Vec<String>>,
    },
    /// The exponent relations among the cofactors form a one-dimensional
    /// space spanned by `exponents`.
    Darboux {
        doc: SystemDoc,
        #[serde(default = "one_empty_sample")]
        samples: Vec<Sample>,
        exponents: Vec<String>,
    },
    /// `{f, g} = expected`.
    Bracket {
        variables: Vec<String>,
        f: String,
        g: String,
        expected: String,
        #[serde(default = "one_empty_sample")]
        samples: Vec<Sample>,
    },
    /// Float-mode invariant lines: exactly `count` isolated lines, matching
    /// `slopes` (`[k, l]` for `y = kx + l`) and `vertical` within `tol`.
    Lines {
        doc: SystemDoc,
        count: usize,
        tol: f64,
        #[serde(default)]
        slopes: Vec<[f64; 2]>,
        #[serde(default)]
        vertical: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureRecord {
    pub id: String,
    pub source: String,
    pub status: Status,
    pub mode: Mode,
    pub details: String,
    pub printed: Vec<Check>,
    #[serde(default)]
    pub derived: Vec<Check>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureFile {
    fixtures: Vec<FixtureRecord>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GalleryError {
    #[error("fixture file: {0}")]
    Json(String),
    #[error("duplicate fixture id `{0}`")]
    DuplicateId(String),
}

pub fn load_fixtures(src: &str) -> Result<Vec<FixtureRecord>, GalleryError> {
    let file: FixtureFile = serde_json::from_str(src).map_err(|e| GalleryError::Json(e.to_string()))?;
    let mut seen = std::collections::BTreeSet::new();
    for f in &file.fixtures {
        if !seen.insert(f.id.clone()) {
            return Err(GalleryError::DuplicateId(f.id.clone()));
        }
    }
    Ok(file.fixtures)
}

/// Outcome of one check: `Ok(())`, or the first failure.
pub type CheckResult = Result<(), String>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureOutcome {
    pub id: String,
    pub status: Status,
    pub mode: Mode,
    /// Whether every printed check passed.
    pub printed_ok: bool,
    /// Whether every derived check passed; `None` without derived checks.
    pub derived_ok: Option<bool>,
    /// Whether the outcome is what `status` promises.
    pub expected: bool,
    pub failures: Vec<String>,
}

fn parse_in(
    src: &str,
    names: &[String],
    params: &BTreeMap<String, Rat>,
) -> Result<MPoly, String> {
    parse_poly_with(src, &make_vars(names), params).map_err(|e| format!("`{src}`: {e}"))
}

fn doc_err(e: DocError) -> String {
    e.to_string()
}

fn sample_label(s: &Sample) -> String {
    if s.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = s.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!(" at {}", parts.join(", "))
}

fn cofactors_of(doc: &SystemDoc, s: &Sample) -> Result<(Vec<MPoly>, BTreeMap<String, Rat>), String> {
    let parsed = doc.parse_with(s).map_err(doc_err)?;
    if parsed.curves.is_empty() {
        return Err("document has no curves".into());
    }
    let mut ks = Vec::new();
    for (i, g) in parsed.curves.iter().enumerate() {
        let r = cofactor(g, &parsed.field).map_err(|e| e.to_string())?;
        match r.cofactor {
            Some(k) => ks.push(k),
            None => {
                return Err(format!(
                    "curve {i} not invariant{}; remainder has {} terms",
                    sample_label(s),
                    r.remainder.num_terms()
                ))
            }
        }
    }
    Ok((ks, doc.rational_params(s).map_err(doc_err)?))
}

fn matches_line(found: &Line, slopes: &[[f64; 2]], vertical: &[f64], tol: f64) -> bool {
    match found {
        Line::Slope { k, l, .. } => slopes
            .iter()
            .any(|[ek, el]| (k - ek).abs() <= tol && (l - el).abs() <= tol),
        Line::Vertical { c, .. } => vertical.iter().any(|e| (c - e).abs() <= tol),
    }
}

impl Check {
    pub fn run(&self) -> CheckResult {
        match self {
            Check::Cofactor {
                doc,
                samples,
                cofactors,
            } => {
                for s in samples {
                    let (ks, params) = cofactors_of(doc, s)?;
                    let Some(expected) = cofactors else { continue };
                    if expected.len() != ks.len() {
                        return Err(format!("{} cofactors for {} curves", expected.len(), ks.len()));
                    }
                    for (i, (k, e)) in ks.iter().zip(expected).enumerate() {
                        let e = parse_in(e, &doc.variables, &params)?;
                        if *k != e {
                            return Err(format!("cofactor {i}{}: got {k}, expected {e}", sample_label(s)));
                        }
                    }
                }
                Ok(())
            }
            Check::Darboux {
                doc,
                samples,
                exponents,
            } => {
                for s in samples {
                    let (ks, params) = cofactors_of(doc, s)?;
                    if exponents.len() != ks.len() {
                        return Err(format!("{} exponents for {} curves", exponents.len(), ks.len()));
                    }
                    let sig: Vec<Rat> = exponents
                        .iter()
                        .map(|e| {
                            let p = parse_in(e, &[], &params)?;
                            Ok(p.constant_term())
                        })
                        .collect::<Result<_, String>>()?;
                    let vars = ks[0].vars().clone();
                    let total = ks
                        .iter()
                        .zip(&sig)
                        .fold(MPoly::zero(&vars), |acc, (k, c)| &acc + &k.scale(c));
                    if !total.is_zero() || sig.iter().all(Zero::is_zero) {
                        return Err(format!("exponents do not annihilate the cofactors{}", sample_label(s)));
                    }
                    let parsed = doc.parse_with(s).map_err(doc_err)?;
                    let basis = darboux_search(&parsed.curves, &parsed.field).map_err(|e| e.to_string())?;
                    if basis.len() != 1 {
                        return Err(format!("null space has dimension {}{}", basis.len(), sample_label(s)));
                    }
                }
                Ok(())
            }
            Check::Bracket {
                variables,
                f,
                g,
                expected,
                samples,
            } => {
                if variables.len() != 2 {
                    return Err("bracket checks are planar".into());
                }
                for s in samples {
                    let probe = SystemDoc {
                        variables: variables.clone(),
                        components: vec![],
                        curves: None,
                        params: s.clone(),
                        float_params: BTreeMap::new(),
                    };
                    let params = probe.rational_params(&Sample::new()).map_err(doc_err)?;
                    let [f, g, e] = [f, g, expected].map(|t| parse_in(t, variables, &params));
                    let b = bracket2(&f?, &g?).map_err(|e| e.to_string())?;
                    let e = e?;
                    if b != e {
                        return Err(format!("bracket{}: got {b}, expected {e}", sample_label(s)));
                    }
                }
                Ok(())
            }
            Check::Lines {
                doc,
                count,
                tol,
                slopes,
                vertical,
            } => {
                let (p, q, _) = doc.parse_float().map_err(doc_err)?;
                let bound = slopes
                    .iter()
                    .flatten()
                    .chain(vertical)
                    .fold(1.0f64, |m, v| m.max(v.abs()))
                    * 4.0;
                let report = invariant_lines_f64(&p, &q, bound);
                if report.non_isolated {
                    return Err("a family of invariant lines was detected".into());
                }
                if report.count() != *count {
                    return Err(format!("found {} lines, expected {count}", report.count()));
                }
                if slopes.len() + vertical.len() != *count {
                    return Err("expected line list does not match the count".into());
                }
                if let Some(bad) = report
                    .lines
                    .iter()
                    .find(|l| !matches_line(l, slopes, vertical, *tol))
                {
                    return Err(format!("unexpected line {bad:?}"));
                }
                if report.max_residual > *tol {
                    return Err(format!("residual {} exceeds {tol}", report.max_residual));
                }
                Ok(())
            }
        }
    }
}

fn run_all(checks: &[Check], failures: &mut Vec<String>, tag: &str) -> bool {
    let mut ok = true;
    for (i, c) in checks.iter().enumerate() {
        if let Err(e) = c.run() {
            failures.push(format!("{tag}[{i}]: {e}"));
            ok = false;
        }
    }
    ok
}

impl FixtureRecord {
    /// Runs every check. A verified fixture must pass all printed checks; a
    /// known discrepancy must fail a printed check, pass all derived checks
    /// and explain itself in `details`.
    pub fn run(&self) -> FixtureOutcome {
        let mut failures = Vec::new();
        let printed_ok = run_all(&self.printed, &mut failures, "printed");
        let derived_ok =
            (!self.derived.is_empty()).then(|| run_all(&self.derived, &mut failures, "derived"));
        let mode_ok = self.mode == Mode::Float
            || self.printed.iter().chain(&self.derived).all(|c| !matches!(c, Check::Lines { .. }));
        let expected = mode_ok
            && !self.printed.is_empty()
            && match self.status {
                Status::Verified => printed_ok && derived_ok != Some(false),
                Status::KnownDiscrepancy => {
                    !printed_ok && derived_ok == Some(true) && !self.details.trim().is_empty()
                }
            };
        FixtureOutcome {
            id: self.id.clone(),
            status: self.status,
            mode: self.mode,
            printed_ok,
            derived_ok,
            expected,
            failures,
        }
    }
}

/// Runs the fixtures whose id starts with `filter`, in parallel, and returns
/// the outcomes sorted by id.
pub fn run_gallery(fixtures: &[FixtureRecord], filter: Option<&str>) -> Vec<FixtureOutcome> {
    let selected: Vec<&FixtureRecord> = fixtures
        .iter()
        .filter(|f| filter.is_none_or(|p| f.id.starts_with(p)))
        .collect();
    let mut out: Vec<FixtureOutcome> = std::thread::scope(|s| {
        let handles: Vec<_> = selected.iter().map(|f| s.spawn(move || f.run())).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fixture thread panicked"))
            .collect()
    });
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}
