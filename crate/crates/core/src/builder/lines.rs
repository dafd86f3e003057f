//! Invariant straight lines of planar fields.
//!
//! Conditions on a line are formed symbolically in the line parameters and
//! solved in floating point. For `y = Kx + L`, the top coefficient of
//! `Q(x, Kx+L) − K P(x, Kx+L)` is `Q_n(1, K) − K P_n(1, K)` and does not depend
//! on `L`, so slopes come from a univariate root search and intercepts from a
//! second one. Vertical lines `x = c` need `P(c, y) ≡ 0`.

use super::BuilderError;
use crate::brackets::VectorField;
use crate::invariance::cofactor;
use crate::ratpoly::{rationalize, to_f64, MPoly, Rat};
use crate::roots::real_roots;

const RESIDUAL_TOL: f64 = 1e-10;
const COEFF_TOL: f64 = 1e-12;

/// Bivariate polynomial with `f64` coefficients, for fields with irrational
/// constants.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FPoly {
    terms: Vec<((u32, u32), f64)>,
}

impl FPoly {
    pub fn new<I: IntoIterator<Item = ((u32, u32), f64)>>(terms: I) -> Self {
        FPoly {
            terms: terms.into_iter().filter(|(_, c)| *c != 0.0).collect(),
        }
    }

    pub fn from_mpoly(p: &MPoly) -> Self {
        FPoly::new(p.terms().map(|(m, c)| ((m.exponent(0), m.exponent(1)), to_f64(c))))
    }

    pub fn terms(&self) -> &[((u32, u32), f64)] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|((i, j), _)| i + j).max().unwrap_or(0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|((i, j), c)| c * x.powi(*i as i32) * y.powi(*j as i32))
            .sum()
    }

    /// Sum of absolute term values, the natural scale for `eval`.
    pub fn eval_abs(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|((i, j), c)| (c * x.powi(*i as i32) * y.powi(*j as i32)).abs())
            .sum()
    }

    fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.abs()).fold(0.0, f64::max)
    }

    /// Coefficients in `x` (ascending) after substituting `y = kx + l`.
    fn on_line(&self, k: f64, l: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.degree() as usize + 1];
        for ((i, j), c) in &self.terms {
            let mut binom = 1.0;
            for m in 0..=*j {
                let e = (i + m) as usize;
                out[e] += c * binom * k.powi(m as i32) * l.powi((j - m) as i32);
                binom = binom * (*j - m) as f64 / (m + 1) as f64;
            }
        }
        out
    }

    /// Coefficients in `y` (ascending) as univariate polynomials in `x`.
    fn coefficients_in_y(&self) -> Vec<Vec<f64>> {
        let dy = self.terms.iter().map(|((_, j), _)| *j).max().unwrap_or(0) as usize;
        let mut out = vec![vec![0.0; self.degree() as usize + 1]; dy + 1];
        for ((i, j), c) in &self.terms {
            out[*j as usize][*i as usize] += c;
        }
        out
    }
}

/// An invariant straight line, with exact parameters when they were
/// certified over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum Line {
    /// `y = k x + l`.
    Slope {
        k: f64,
        l: f64,
        exact: Option<(Rat, Rat)>,
    },
    /// `x = c`.
    Vertical { c: f64, exact: Option<Rat> },
}

impl Line {
    fn sort_key(&self) -> (u8, f64, f64) {
        match self {
            Line::Slope { k, l, .. } => (0, *k, *l),
            Line::Vertical { c, .. } => (1, *c, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LineReport {
    /// Isolated lines, slopes first sorted by `(K, L)`, then vertical lines.
    pub lines: Vec<Line>,
    /// A one-parameter family of invariant lines was detected.
    pub non_isolated: bool,
    /// The slope condition vanished identically, so isolated lines off a
    /// detected family may be missing.
    pub degenerate_top: bool,
    /// Largest relative residual over the sample points of reported lines.
    pub max_residual: f64,
}

impl LineReport {
    pub fn count(&self) -> usize {
        self.lines.len()
    }
}

fn sample_points() -> impl Iterator<Item = f64> {
    (0..20).map(|i| -1.9 + 0.2 * i as f64 + 0.013)
}

fn slope_residual(p: &FPoly, q: &FPoly, k: f64, l: f64) -> f64 {
    sample_points()
        .map(|x| {
            let y = k * x + l;
            let r = q.eval(x, y) - k * p.eval(x, y);
            r.abs() / (1.0 + q.eval_abs(x, y) + k.abs() * p.eval_abs(x, y))
        })
        .fold(0.0, f64::max)
}

fn vertical_residual(p: &FPoly, c: f64) -> f64 {
    sample_points()
        .map(|y| p.eval(c, y).abs() / (1.0 + p.eval_abs(c, y)))
        .fold(0.0, f64::max)
}

fn line_conditions(p: &FPoly, q: &FPoly, k: f64, l: f64) -> Vec<f64> {
    let qc = q.on_line(k, l);
    let pc = p.on_line(k, l);
    let n = qc.len().max(pc.len());
    (0..n)
        .map(|e| qc.get(e).copied().unwrap_or(0.0) - k * pc.get(e).copied().unwrap_or(0.0))
        .collect()
}

/// Gauss-Newton on all line conditions, recovering accuracy lost at
/// multiple roots.
fn polish(p: &FPoly, q: &FPoly, mut k: f64, mut l: f64) -> (f64, f64) {
    for _ in 0..20 {
        let r = line_conditions(p, q, k, l);
        let hk = 1e-7 * k.abs().max(1.0);
        let hl = 1e-7 * l.abs().max(1.0);
        let rk = line_conditions(p, q, k + hk, l);
        let rk2 = line_conditions(p, q, k - hk, l);
        let rl = line_conditions(p, q, k, l + hl);
        let rl2 = line_conditions(p, q, k, l - hl);
        let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for e in 0..r.len() {
            let jk = (rk[e] - rk2[e]) / (2.0 * hk);
            let jl = (rl[e] - rl2[e]) / (2.0 * hl);
            a11 += jk * jk;
            a12 += jk * jl;
            a22 += jl * jl;
            b1 += jk * r[e];
            b2 += jl * r[e];
        }
        let det = a11 * a22 - a12 * a12;
        if det.abs() < 1e-300 {
            break;
        }
        let dk = (a22 * b1 - a12 * b2) / det;
        let dl = (a11 * b2 - a12 * b1) / det;
        k -= dk;
        l -= dl;
        if dk.abs() + dl.abs() < 1e-16 * (1.0 + k.abs() + l.abs()) {
            break;
        }
    }
    (k, l)
}

/// Coefficients (ascending in `l`) of each `x`-power of the line conditions
/// at a fixed slope, computed by interpolating in `l`.
fn conditions_in_l(p: &FPoly, q: &FPoly, k: f64) -> Vec<Vec<f64>> {
    let d = p.degree().max(q.degree()) as usize;
    // Degree in l of each condition is at most d; interpolate at d+1 nodes
    // by solving the Vandermonde system through nalgebra.
    let nodes: Vec<f64> = (0..=d).map(|i| i as f64 - d as f64 / 2.0).collect();
    let vals: Vec<Vec<f64>> = nodes.iter().map(|&l| line_conditions(p, q, k, l)).collect();
    let vand = nalgebra::DMatrix::from_fn(d + 1, d + 1, |i, j| nodes[i].powi(j as i32));
    let lu = vand.lu();
    (0..vals[0].len())
        .map(|e| {
            let rhs = nalgebra::DVector::from_iterator(d + 1, vals.iter().map(|v| v[e]));
            lu.solve(&rhs).map(|s| s.iter().copied().collect()).unwrap_or_default()
        })
        .collect()
}

fn trim(c: &[f64], scale: f64) -> Vec<f64> {
    let mut v: Vec<f64> = c
        .iter()
        .map(|&a| if a.abs() <= COEFF_TOL * scale { 0.0 } else { a })
        .collect();
    while v.last() == Some(&0.0) {
        v.pop();
    }
    v
}

/// Intercepts of invariant lines with slope `k`; `None` when every intercept
/// works.
fn intercepts(p: &FPoly, q: &FPoly, k: f64, max_abs: f64) -> Option<Vec<f64>> {
    let scale = 1.0 + p.max_abs_coeff() + q.max_abs_coeff();
    let conds: Vec<Vec<f64>> = conditions_in_l(p, q, k)
        .iter()
        .map(|c| trim(c, scale * (1.0 + k.abs()).powi(p.degree().max(q.degree()) as i32)))
        .filter(|c| !c.is_empty())
        .collect();
    let Some(lowest) = conds.iter().min_by_key(|c| c.len()) else {
        return None;
    };
    if lowest.len() == 1 {
        return Some(vec![]);
    }
    Some(
        real_roots(lowest, 1e-6)
            .into_iter()
            .filter(|l| l.abs() <= max_abs + 1e-9)
            .collect(),
    )
}

fn top_slope_poly(p: &FPoly, q: &FPoly) -> Vec<f64> {
    let n = p.degree().max(q.degree());
    let mut c = vec![0.0; n as usize + 2];
    for ((i, j), a) in q.terms() {
        if i + j == n {
            c[*j as usize] += a;
        }
    }
    for ((i, j), a) in p.terms() {
        if i + j == n {
            c[*j as usize + 1] -= a;
        }
    }
    c
}

/// Invariant lines of a planar field given in floating point, with
/// `|K|, |L|, |c| ≤ max_abs`. Each reported line passes the residual check at
/// 20 sample points with relative tolerance `1e-10`.
pub fn invariant_lines_f64(p: &FPoly, q: &FPoly, max_abs: f64) -> LineReport {
    let mut report = LineReport::default();
    let scale = 1.0 + p.max_abs_coeff() + q.max_abs_coeff();
    let top = trim(&top_slope_poly(p, q), scale);
    let mut found: Vec<(f64, f64)> = Vec::new();
    if top.is_empty() {
        report.degenerate_top = true;
        let probes = [0.37, -1.3, 2.1];
        let family = probes.iter().all(|&k| match intercepts(p, q, k, f64::INFINITY) {
            None => true,
            Some(ls) => ls.iter().any(|&l| slope_residual(p, q, k, l) < RESIDUAL_TOL),
        });
        report.non_isolated = family;
    } else {
        let slopes = if top.len() == 1 {
            vec![]
        } else {
            real_roots(&top, 1e-6)
        };
        for k in slopes.into_iter().filter(|k| k.abs() <= max_abs + 1e-9) {
            match intercepts(p, q, k, max_abs) {
                None => report.non_isolated = true,
                Some(ls) => {
                    for l in ls {
                        let (k2, l2) = polish(p, q, k, l);
                        if slope_residual(p, q, k2, l2) < RESIDUAL_TOL
                            && !found
                                .iter()
                                .any(|(a, b)| (a - k2).abs() < 1e-8 && (b - l2).abs() < 1e-8)
                        {
                            found.push((k2, l2));
                        }
                    }
                }
            }
        }
    }
    for (k, l) in found {
        report.max_residual = report.max_residual.max(slope_residual(p, q, k, l));
        report.lines.push(Line::Slope { k, l, exact: None });
    }
    // Vertical lines: common real roots of the y-coefficients of P.
    let ycoeffs: Vec<Vec<f64>> = p
        .coefficients_in_y()
        .iter()
        .map(|c| trim(c, scale))
        .filter(|c| !c.is_empty())
        .collect();
    match ycoeffs.iter().min_by_key(|c| c.len()) {
        None => report.non_isolated = true,
        Some(lowest) if lowest.len() > 1 => {
            let mut cs: Vec<f64> = Vec::new();
            for c in real_roots(lowest, 1e-6) {
                if c.abs() <= max_abs + 1e-9
                    && vertical_residual(p, c) < RESIDUAL_TOL
                    && !cs.iter().any(|d| (d - c).abs() < 1e-8)
                {
                    cs.push(c);
                }
            }
            for c in cs {
                report.max_residual = report.max_residual.max(vertical_residual(p, c));
                report.lines.push(Line::Vertical { c, exact: None });
            }
        }
        Some(_) => {}
    }
    report
        .lines
        .sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap());
    report
}

/// Invariant lines of an exact planar field. Candidates whose parameters
/// rationalize are re-certified by exact division and carry `exact`.
pub fn invariant_lines(v: &VectorField, max_abs: &Rat) -> Result<LineReport, BuilderError> {
    if v.dim() != 2 {
        return Err(BuilderError::NotPlanar);
    }
    let p = FPoly::from_mpoly(v.component(0));
    let q = FPoly::from_mpoly(v.component(1));
    let mut report = invariant_lines_f64(&p, &q, to_f64(max_abs));
    let vars = v.vars();
    let x = MPoly::var_at(vars, 0);
    let y = MPoly::var_at(vars, 1);
    let certify = |g: &MPoly| cofactor(g, v).map(|r| r.is_invariant()).unwrap_or(false);
    let rat = |t: f64| rationalize(t, 1e-9, 1_000_000);
    for line in &mut report.lines {
        match line {
            Line::Slope { k, l, exact } => {
                if let (Some(kr), Some(lr)) = (rat(*k), rat(*l)) {
                    let g = &(&y - &x.scale(&kr)) - &MPoly::constant(vars, lr.clone());
                    if certify(&g) {
                        *k = to_f64(&kr);
                        *l = to_f64(&lr);
                        *exact = Some((kr, lr));
                    }
                }
            }
            Line::Vertical { c, exact } => {
                if let Some(cr) = rat(*c) {
                    let g = &x - &MPoly::constant(vars, cr.clone());
                    if certify(&g) {
                        *c = to_f64(&cr);
                        *exact = Some(cr);
                    }
                }
            }
        }
    }
    if report.lines.iter().all(|l| match l {
        Line::Slope { exact, .. } => exact.is_some(),
        Line::Vertical { exact, .. } => exact.is_some(),
    }) && !report.lines.is_empty()
    {
        report.max_residual = 0.0;
    }
    Ok(report)
}
