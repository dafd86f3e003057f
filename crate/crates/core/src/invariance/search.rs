//! Invariant-curve search for a given planar field.
//!
//! The condition `dg(v) = K g` is bilinear in the unknown coefficients of
//! `g` and `K`. The top homogeneous part `K_top` of the cofactor is fixed
//! first from the top forms of the field: every linear factor `y - t x` of
//! `g_top` is invariant for the top field, so `t` is a root of
//! `C(t) = Q_n(1,t) - t P_n(1,t)`, and `K_top` is a nonnegative integer
//! combination of the corresponding line cofactors with total weight
//! `deg g`. With `K_top` fixed, the remaining parts of `K` are found by a
//! small eigenvalue problem (constant part only) or numerically (several
//! parts), rationalized, and the coefficients of `g` are then recovered by an
//! exact null-space computation that also certifies the result.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_traits::{One, Zero};

use crate::brackets::{directional, VectorField};
use crate::linalg::null_space;
use crate::ratpoly::{monomials_up_to, rationalize, to_f64, MPoly, Monomial, Rat};
use crate::roots::{complex_roots, C64};

use super::cofactor;

/// Coefficients of a binary form of degree `deg`: entry `k` multiplies
/// `x^(deg-k) y^k`.
fn binary_coeffs(p: &MPoly, deg: u32) -> Vec<Rat> {
    (0..=deg)
        .map(|k| p.coeff(&Monomial::new(vec![deg - k, k])))
        .collect()
}

fn form_from_coeffs(vars: &crate::ratpoly::Vars, coeffs: &[Rat]) -> MPoly {
    let deg = coeffs.len() as u32 - 1;
    MPoly::from_terms(
        vars,
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (Monomial::new(vec![deg - k as u32, k as u32]), c.clone())),
    )
}

fn rationalize_loose(x: f64) -> Option<Rat> {
    let scale = 1.0 + x.abs();
    [1e-10, 1e-8, 1e-6]
        .iter()
        .find_map(|tol| rationalize(x, tol * scale, 1_000_000))
}

/// Candidate top-degree cofactor parts (forms of degree `n-1`) for curves of
/// exact degree `deg_g` under a planar field of degree `n >= 1`.
pub fn top_cofactor_candidates(v: &VectorField, deg_g: u32) -> Vec<MPoly> {
    let n = v.degree();
    if v.dim() != 2 || n == 0 {
        return Vec::new();
    }
    let vars = v.vars().clone();
    let pn = binary_coeffs(&v.component(0).homogeneous_part(n), n);
    let qn = binary_coeffs(&v.component(1).homogeneous_part(n), n);
    // C(t), ascending powers of t.
    let mut c = vec![Rat::zero(); n as usize + 2];
    for k in 0..=n as usize {
        c[k] += &qn[k];
        c[k + 1] -= &pn[k];
    }
    if c.iter().all(Zero::is_zero) {
        // Radial top field: P_n = x R, Q_n = y R and K_top = deg_g * R.
        let r: Vec<Rat> = pn[..n as usize].to_vec();
        return vec![form_from_coeffs(&vars, &r).scale(&Rat::from_integer(deg_g.into()))];
    }
    let cf: Vec<f64> = c.iter().map(to_f64).collect();
    let mut roots: Vec<C64> = Vec::new();
    for z in complex_roots(&cf) {
        if !roots.iter().any(|w| (w - z).norm() <= 1e-7 * (1.0 + z.norm())) {
            roots.push(z);
        }
    }
    let pc: Vec<C64> = pn.iter().map(|r| C64::new(to_f64(r), 0.0)).collect();
    let qc: Vec<C64> = qn.iter().map(|r| C64::new(to_f64(r), 0.0)).collect();
    let mut line_cofactors: Vec<Vec<C64>> = roots
        .iter()
        .map(|&t| {
            // (Q_n - t P_n) / (y - t x), solved from the y^n coefficient down.
            let num: Vec<C64> = (0..=n as usize).map(|j| qc[j] - t * pc[j]).collect();
            let mut k = vec![C64::new(0.0, 0.0); n as usize];
            k[n as usize - 1] = num[n as usize];
            for j in (1..n as usize).rev() {
                k[j - 1] = num[j] + t * k[j];
            }
            k
        })
        .collect();
    if pn[n as usize].is_zero() {
        // The line x = 0 is invariant for the top field with cofactor P_n / x.
        line_cofactors.push(pc[..n as usize].to_vec());
    }
    let mut out: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for_each_multiset(line_cofactors.len(), deg_g as usize, &mut |mult| {
        let mut sum = vec![C64::new(0.0, 0.0); n as usize];
        for (i, &e) in mult.iter().enumerate() {
            for (s, k) in sum.iter_mut().zip(&line_cofactors[i]) {
                *s += k * e as f64;
            }
        }
        let scale = 1.0 + sum.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if sum.iter().any(|z| z.im.abs() > 1e-6 * scale) {
            return;
        }
        if let Some(r) = sum
            .iter()
            .map(|z| rationalize_loose(z.re))
            .collect::<Option<Vec<_>>>()
        {
            out.insert(r);
        }
    });
    out.into_iter()
        .map(|r| form_from_coeffs(&vars, &r))
        .collect()
}

fn for_each_multiset(kinds: usize, size: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if i + 1 == cur.len() {
            cur[i] = left;
            f(cur);
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, f);
        }
    }
    if kinds == 0 {
        return;
    }
    rec(0, size, &mut vec![0; kinds], f);
}

/// Dense matrix of `g -> dg(v) - K g` over `g` of degree `<= deg_g`.
/// Columns follow `cols`; rows are keyed by monomial.
struct Operator {
    cols: Vec<Monomial>,
    rows: BTreeMap<Monomial, Vec<Rat>>,
}

impl Operator {
    fn new(v: &VectorField, deg_g: u32, k: &MPoly) -> Operator {
        let mut cols = monomials_up_to(2, deg_g);
        cols.reverse();
        let vars = v.vars();
        let mut rows: BTreeMap<Monomial, Vec<Rat>> = BTreeMap::new();
        let ncols = cols.len();
        for (j, m) in cols.iter().enumerate() {
            let g = MPoly::monomial(vars, m.clone(), Rat::one());
            let image = &directional(&g, v).expect("shared variables") - &(k * &g);
            for (rm, c) in image.terms() {
                rows.entry(rm.clone())
                    .or_insert_with(|| vec![Rat::zero(); ncols])[j] = c.clone();
            }
        }
        Operator { cols, rows }
    }

    fn matrix_where(&self, keep: impl Fn(&Monomial) -> bool) -> Vec<Vec<Rat>> {
        self.rows
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(_, r)| r.clone())
            .collect()
    }

    fn poly(&self, vars: &crate::ratpoly::Vars, coeffs: &[Rat]) -> MPoly {
        MPoly::from_terms(vars, self.cols.iter().cloned().zip(coeffs.iter().cloned()))
    }
}

/// All nonconstant `g` of degree `<= deg_g` with `dg(v) = K g` for the given
/// `K`, as a basis in reduced echelon form (highest monomials first), each
/// with leading coefficient 1.
pub fn curves_with_cofactor(v: &VectorField, deg_g: u32, k: &MPoly) -> Vec<MPoly> {
    let op = Operator::new(v, deg_g, k);
    let m = op.matrix_where(|_| true);
    null_space(&m, op.cols.len())
        .into_iter()
        .map(|b| op.poly(v.vars(), &b))
        .filter(|g| !g.is_constant())
        .collect()
}

/// Invariant curves of degree `deg_g` with cofactor degree `<= deg_k`.
///
/// Each returned pair `(g, K)` is certified exactly; `g` is scaled to
/// leading coefficient 1. When several independent curves share a cofactor
/// the whole echelon basis is returned. Non-planar input yields no results.
pub fn find_invariant_curve(v: &VectorField, deg_g: u32, deg_k: u32) -> Vec<(MPoly, MPoly)> {
    if v.dim() != 2 || deg_g == 0 {
        return Vec::new();
    }
    let n = v.degree();
    let vars = v.vars().clone();
    let top_deg = n.saturating_sub(1);
    let k_eff = deg_k.min(top_deg);
    let tops = if n >= 1 && k_eff == top_deg {
        top_cofactor_candidates(v, deg_g)
    } else {
        vec![MPoly::zero(&vars)]
    };
    // Lower cofactor monomials: degrees below the top part, up to deg_k.
    let lower: Vec<Monomial> = if n >= 2 {
        monomials_up_to(2, k_eff.min(n - 2))
    } else {
        Vec::new()
    };
    let mut cofactors: BTreeSet<MPolyKey> = BTreeSet::new();
    for top in &tops {
        let candidates: Vec<MPoly> = if lower.is_empty() {
            vec![top.clone()]
        } else if lower.len() == 1 {
            constant_part_candidates(v, deg_g, top)
                .into_iter()
                .map(|b| top + &MPoly::constant(&vars, b))
                .collect()
        } else {
            lower_part_candidates(v, deg_g, top, &lower)
        };
        for k in candidates {
            cofactors.insert(MPolyKey(k));
        }
    }
    let mut out = Vec::new();
    for MPolyKey(k) in cofactors {
        for g in curves_with_cofactor(v, deg_g, &k) {
            if g.degree() != deg_g {
                continue;
            }
            let report = cofactor(&g, v).expect("nonzero curve");
            debug_assert_eq!(report.cofactor.as_ref(), Some(&k));
            if report.cofactor.as_ref() == Some(&k) {
                out.push((g, k.clone()));
            }
        }
    }
    out
}

// Orders polynomials by their canonical text for deterministic output.
#[derive(PartialEq, Eq)]
struct MPolyKey(MPoly);

impl Ord for MPolyKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a: Vec<_> = self.0.terms().rev().collect();
        let b: Vec<_> = other.0.terms().rev().collect();
        a.cmp(&b)
    }
}

impl PartialOrd for MPolyKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// With `K = top + beta`, rows of degree above `deg_g` do not involve `beta`
/// and cut out a subspace `B`; on it the remaining rows read
/// `N_L B y = beta B y`. Restricting to the pivot rows of the echelon basis
/// gives a square eigenvalue problem whose rational eigenvalues are the
/// candidates.
fn constant_part_candidates(v: &VectorField, deg_g: u32, top: &MPoly) -> Vec<Rat> {
    let op = Operator::new(v, deg_g, top);
    let ncols = op.cols.len();
    let high = op.matrix_where(|m| m.degree() > deg_g);
    let basis = null_space(&high, ncols);
    if basis.is_empty() {
        return Vec::new();
    }
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|c| !c.is_zero()).unwrap())
        .collect();
    let row_of = |col: usize| op.rows.get(&op.cols[col]);
    let k = basis.len();
    let mut m = vec![vec![Rat::zero(); k]; k];
    for (i, &p) in pivots.iter().enumerate() {
        let Some(row) = row_of(p) else { continue };
        for (j, b) in basis.iter().enumerate() {
            m[i][j] = row.iter().zip(b).map(|(a, c)| a * c).sum();
        }
    }
    rational_eigenvalues(&m)
}

fn rational_eigenvalues(m: &[Vec<Rat>]) -> Vec<Rat> {
    let k = m.len();
    let f = DMatrix::<f64>::from_fn(k, k, |i, j| to_f64(&m[i][j]));
    let scale = 1.0 + f.abs().max();
    let mut out: Vec<Rat> = Vec::new();
    for z in crate::roots::eigenvalues(&f) {
        if z.im.abs() > 1e-6 * scale {
            continue;
        }
        for tol in [1e-12, 1e-10, 1e-8, 1e-6] {
            if let Some(r) = rationalize(z.re, tol * scale, 1_000_000) {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Several lower cofactor parts: alternate between the best `g` for fixed
/// parts (smallest singular vector) and the best parts for fixed `g`
/// (linear least squares), then polish with Gauss-Newton and rationalize.
fn lower_part_candidates(v: &VectorField, deg_g: u32, top: &MPoly, lower: &[Monomial]) -> Vec<MPoly> {
    let vars = v.vars().clone();
    let op = Operator::new(v, deg_g, top);
    let ncols = op.cols.len();
    let max_lower = lower.iter().map(Monomial::degree).max().unwrap_or(0);
    let high = op.matrix_where(|m| m.degree() > deg_g + max_lower);
    let basis = null_space(&high, ncols);
    if basis.is_empty() {
        return Vec::new();
    }
    // Row set: all monomials of degree <= deg_g + max_lower.
    let row_monos = monomials_up_to(2, deg_g + max_lower);
    let row_index: BTreeMap<&Monomial, usize> =
        row_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let nr = row_monos.len();
    let kb = basis.len();
    let nl = lower.len();
    // A0 = (A restricted) * B and E_i = (l_i * .) * B, as f64 matrices.
    let mut a0 = DMatrix::<f64>::zeros(nr, kb);
    for (m, row) in &op.rows {
        if let Some(&r) = row_index.get(m) {
            for (j, b) in basis.iter().enumerate() {
                let s: Rat = row.iter().zip(b).map(|(x, y)| x * y).sum();
                a0[(r, j)] = to_f64(&s);
            }
        }
    }
    let mut es: Vec<DMatrix<f64>> = Vec::with_capacity(nl);
    for l in lower {
        let mut e = DMatrix::<f64>::zeros(nr, kb);
        for (j, b) in basis.iter().enumerate() {
            for (c, coef) in op.cols.iter().zip(b) {
                if !coef.is_zero() {
                    let r = row_index[&c.mul(l)];
                    e[(r, j)] += to_f64(coef);
                }
            }
        }
        es.push(e);
    }
    let scale = a0.abs().max().max(1.0);
    let a0 = a0 / scale;
    let es: Vec<DMatrix<f64>> = es.into_iter().map(|e| e / scale).collect();
    let residual_matrix = |kappa: &[f64]| {
        let mut m = a0.clone();
        for (e, k) in es.iter().zip(kappa) {
            m -= e * *k;
        }
        m
    };
    // A basis vector equal to the constant polynomial is handled apart:
    // for K = 0 it is a trivial solution, so the search normalizes only the
    // nonconstant coordinates and eliminates the constant one by least
    // squares.
    let const_col = ncols - 1;
    let const_idx = basis
        .iter()
        .position(|b| b.iter().position(|c| !c.is_zero()) == Some(const_col));
    let best_y = |m: &DMatrix<f64>| -> nalgebra::DVector<f64> {
        let Some(ci) = const_idx else {
            return smallest_singular_vector(m);
        };
        let mc = m.column(ci).into_owned();
        let rest: Vec<usize> = (0..kb).filter(|&j| j != ci).collect();
        let mut mr = m.select_columns(&rest);
        let nc = mc.norm_squared();
        if nc > 0.0 {
            let proj = &mc * (mc.transpose() * &mr) / nc;
            mr -= proj;
        }
        let yr = smallest_singular_vector(&mr);
        let c = if nc > 0.0 {
            -(mc.transpose() * (m.select_columns(&rest) * &yr))[(0, 0)] / nc
        } else {
            0.0
        };
        let mut y = nalgebra::DVector::zeros(kb);
        for (k, &j) in rest.iter().enumerate() {
            y[j] = yr[k];
        }
        y[ci] = c;
        y
    };
    let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut starts: Vec<Vec<f64>> = vec![vec![0.0; nl]];
    for i in 0..nl {
        for s in [-2.0, -1.0, 1.0, 2.0] {
            let mut k = vec![0.0; nl];
            k[i] = s;
            starts.push(k);
        }
    }
    for start in starts {
        let mut kappa = start;
        let mut y = best_y(&residual_matrix(&kappa));
        for _ in 0..200 {
            // Least squares in kappa: A0 y = sum kappa_i E_i y.
            let cols: Vec<_> = es.iter().map(|e| e * &y).collect();
            let j = DMatrix::from_columns(&cols);
            let rhs = &a0 * &y;
            let Ok(sol) = j.clone().svd(true, true).solve(&rhs, 1e-14) else {
                break;
            };
            kappa = sol.iter().copied().collect();
            y = best_y(&residual_matrix(&kappa));
        }
        let res = (residual_matrix(&kappa) * &y).norm();
        if !(res < 1e-6) {
            continue;
        }
        if let Some(r) = kappa
            .iter()
            .map(|&k| rationalize_loose(k))
            .collect::<Option<Vec<_>>>()
        {
            found.insert(r);
        }
    }
    found
        .into_iter()
        .map(|ks| {
            let mut k = top.clone();
            for (m, c) in lower.iter().zip(ks) {
                k = &k + &MPoly::monomial(&vars, m.clone(), c);
            }
            k
        })
        .collect()
}

fn smallest_singular_vector(m: &DMatrix<f64>) -> nalgebra::DVector<f64> {
    let n = m.ncols();
    let svd = (m.transpose() * m).symmetric_eigen();
    let i = svd.eigenvalues.imin();
    let mut v = svd.eigenvectors.column(i).into_owned();
    if v.norm() == 0.0 {
        v = nalgebra::DVector::from_element(n, 1.0 / (n as f64).sqrt());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_poly;
    use crate::ratpoly::strategies::vars;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &vars(&["x", "y"])).unwrap()
    }

    fn field(a: &str, b: &str) -> VectorField {
        VectorField::planar(p(a), p(b)).unwrap()
    }

    #[test]
    fn rotation_circles() {
        let v = field("-y", "x");
        let found = find_invariant_curve(&v, 2, 0);
        assert_eq!(found, vec![(p("x^2 + y^2"), p("0"))]);
    }

    #[test]
    fn parabola_reconstruction() {
        // g = (x+y)^2 - 2x with alpha = beta = 1.
        let g = "((x+y)^2 - 2*x)";
        let v = field(
            &format!("{g} - 4*x*(x+y)"),
            &format!("{g} + 4*x*(x+y) - 4*x"),
        );
        let found = find_invariant_curve(&v, 2, 1);
        assert!(found.contains(&(p(g), p("4*x + 4*y - 2"))), "{found:?}");
    }

    #[test]
    fn known_cofactor_null_space() {
        let v = field("-y", "x");
        let gs = curves_with_cofactor(&v, 4, &p("0"));
        assert_eq!(gs, vec![p("(x^2+y^2)^2"), p("x^2 + y^2")]);
    }

    #[test]
    fn radial_field() {
        let v = field("x", "y");
        let tops = top_cofactor_candidates(&v, 3);
        assert_eq!(tops, vec![p("3")]);
        let found = find_invariant_curve(&v, 1, 0);
        assert_eq!(found, vec![(p("x"), p("1")), (p("y"), p("1"))]);
    }

    #[test]
    fn cubic_field_with_lower_parts() {
        // Circle and line with constant multipliers and unit extras.
        let v = field(
            "(y - x)*(-2*y) - (x^2+y^2-1) + (x^2+y^2-1)*(y-x)",
            "(y - x)*(2*x) - (x^2+y^2-1) + (x^2+y^2-1)*(y-x)",
        );
        let found = find_invariant_curve(&v, 2, 2);
        let circle = p("x^2 + y^2 - 1");
        assert!(found.iter().any(|(g, _)| *g == circle), "{found:?}");
        let lines = find_invariant_curve(&v, 1, 2);
        assert!(lines.iter().any(|(g, _)| *g == p("x - y")), "{lines:?}");
    }

    #[test]
    fn empty_when_nothing_fits() {
        let v = field("y", "-x + x^2 + y^2 + 3*x*y");
        assert!(find_invariant_curve(&v, 1, 1).is_empty());
        let v3 = VectorField::new(vec![
            parse_poly("y", &vars(&["x", "y", "z"])).unwrap(),
            parse_poly("z", &vars(&["x", "y", "z"])).unwrap(),
            parse_poly("x", &vars(&["x", "y", "z"])).unwrap(),
        ])
        .unwrap();
        assert!(find_invariant_curve(&v3, 2, 1).is_empty());
    }
}
