//! Inverse constructions: vector fields built around prescribed invariant
//! curves.
//!
//! Every constructor returns a polynomial field. Divisions by a curve that
//! appear in the textbook formulas are cleared by multiplying through with the
//! product of the remaining curves, so no rational function is ever formed.

mod circles;
mod lines;
mod separable;

pub use circles::{build_circles, build_two_nests, CircleReport, CircleSpec};
pub use lines::{invariant_lines, invariant_lines_f64, FPoly, Line, LineReport};
pub use separable::{
    antiderivative, build_hamiltonian_perturbation, build_leading_term, build_separable,
    separable_curve,
};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::brackets::{bracket2, bracket_n, BracketError, VectorField};
use crate::invariance::{cofactor, InvarianceError};
use crate::ratpoly::{MPoly, PolyError, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuilderError {
    #[error("no curves given")]
    EmptyCurves,
    #[error("{curves} curves but {multipliers} multipliers")]
    CountMismatch { curves: usize, multipliers: usize },
    #[error("the Jacobian bracket of the curves vanishes identically")]
    DegenerateBracket,
    #[error("expected a planar construction")]
    NotPlanar,
    #[error("integrand is zero")]
    ZeroIntegrand,
    #[error("degree {got} exceeds the allowed {max}")]
    DegreeTooHigh { got: u32, max: u32 },
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("at least one circle per nest is required")]
    EmptyNest,
    #[error("the circle construction takes no extra multipliers")]
    NonZeroExtras,
    #[error("{0} must be a polynomial in {1} alone")]
    NotUnivariate(&'static str, String),
    #[error("multi-index {0:?} has the wrong length or an index out of range")]
    BadIndex(Vec<usize>),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Invariance(#[from] InvarianceError),
}

/// Prescribed curves over a shared variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSet {
    pub curves: Vec<MPoly>,
    pub labels: Vec<Option<String>>,
}

impl CurveSet {
    pub fn new(curves: Vec<MPoly>) -> Result<Self, BuilderError> {
        let first = curves.first().ok_or(BuilderError::EmptyCurves)?;
        if curves.iter().any(|c| c.vars() != first.vars()) {
            return Err(BracketError::VariableMismatch.into());
        }
        if curves.iter().any(MPoly::is_zero) {
            return Err(InvarianceError::ZeroCurve.into());
        }
        let labels = vec![None; curves.len()];
        Ok(CurveSet { curves, labels })
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        self.labels = labels;
        self.labels.resize(self.curves.len(), None);
        self
    }

    pub fn vars(&self) -> &Vars {
        self.curves[0].vars()
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Product of all curves.
    pub fn product(&self) -> MPoly {
        self.curves
            .iter()
            .fold(MPoly::one(self.vars()), |acc, g| &acc * g)
    }

    /// Product of all curves except those at `skip`.
    pub fn product_except(&self, skip: &[usize]) -> MPoly {
        self.curves
            .iter()
            .enumerate()
            .filter(|(i, _)| !skip.contains(i))
            .fold(MPoly::one(self.vars()), |acc, (_, g)| &acc * g)
    }
}

/// Multipliers `λ_1..λ_S` plus the two planar extras `(λ_{S+1}, λ_{S+2})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierSet {
    pub lambdas: Vec<MPoly>,
    pub extra: (MPoly, MPoly),
}

impl MultiplierSet {
    /// Multipliers with both extras zero.
    pub fn new(lambdas: Vec<MPoly>, vars: &Vars) -> Self {
        MultiplierSet {
            lambdas,
            extra: (MPoly::zero(vars), MPoly::zero(vars)),
        }
    }

    pub fn with_extra(mut self, s1: MPoly, s2: MPoly) -> Self {
        self.extra = (s1, s2);
        self
    }
}

fn check_counts(curves: &CurveSet, mult: &MultiplierSet) -> Result<(), BuilderError> {
    if curves.len() != mult.lambdas.len() {
        return Err(BuilderError::CountMismatch {
            curves: curves.len(),
            multipliers: mult.lambdas.len(),
        });
    }
    let vars = curves.vars();
    let all = mult
        .lambdas
        .iter()
        .chain([&mult.extra.0, &mult.extra.1]);
    if all.into_iter().any(|l| l.vars() != vars) {
        return Err(BracketError::VariableMismatch.into());
    }
    Ok(())
}

/// Planar field with every `g_j` invariant:
///
/// `P = Σ λ_j {g_j, x} Π_{m≠j} g_m + λ_{S+2} g`,
/// `Q = Σ λ_j {g_j, y} Π_{m≠j} g_m − λ_{S+1} g`,
///
/// where `{g, x} = −g_y`, `{g, y} = g_x` and `g = Π g_j`.
pub fn build_planar(curves: &CurveSet, mult: &MultiplierSet) -> Result<VectorField, BuilderError> {
    if curves.vars().len() != 2 {
        return Err(BuilderError::NotPlanar);
    }
    check_counts(curves, mult)?;
    let vars = curves.vars();
    let x = MPoly::var_at(vars, 0);
    let y = MPoly::var_at(vars, 1);
    let mut p = MPoly::zero(vars);
    let mut q = MPoly::zero(vars);
    for (j, (g, lam)) in curves.curves.iter().zip(&mult.lambdas).enumerate() {
        if lam.is_zero() {
            continue;
        }
        let rest = lam * &curves.product_except(&[j]);
        p = p + &bracket2(g, &x)? * &rest;
        q = q + &bracket2(g, &y)? * &rest;
    }
    let g = curves.product();
    p = p + &mult.extra.1 * &g;
    q = q - &mult.extra.0 * &g;
    Ok(VectorField::planar(p, q)?)
}

/// Cofactor-cleared determinant construction in `N` dimensions:
///
/// `ẋ^j = Σ_k Φ_k {g_1, ..., x^j (slot k), ..., g_N}`
///
/// which satisfies `dg_k(v) = Φ_k · Υ` with `Υ = {g_1, ..., g_N}`.
pub fn build_ndim(curves: &[MPoly], phis: &[MPoly]) -> Result<VectorField, BuilderError> {
    let first = curves.first().ok_or(BuilderError::EmptyCurves)?;
    let vars = first.vars().clone();
    let n = vars.len();
    if curves.len() != n {
        return Err(BracketError::Dimension {
            expected: n,
            got: curves.len(),
        }
        .into());
    }
    if phis.len() != n {
        return Err(BuilderError::CountMismatch {
            curves: n,
            multipliers: phis.len(),
        });
    }
    if bracket_n(curves)?.is_zero() {
        return Err(BuilderError::DegenerateBracket);
    }
    let mut comps = Vec::with_capacity(n);
    for j in 0..n {
        let xj = MPoly::var_at(&vars, j);
        let mut c = MPoly::zero(&vars);
        for (k, phi) in phis.iter().enumerate() {
            if phi.is_zero() {
                continue;
            }
            let mut slots = curves.to_vec();
            slots[k] = xj.clone();
            c = c + phi * &bracket_n(&slots)?;
        }
        comps.push(c);
    }
    Ok(VectorField::new(comps)?)
}

/// Multi-index multiplier sum in `N` dimensions over `S` curves.
///
/// Indices `0..S` refer to the curves and `S..S+N` to the coordinates. For a
/// multi-index `α` of length `N−1` with multiplier `μ_α`, the field gains
///
/// `ẋ^j += μ_α Π_{k∉α} g_k {g_{α_1}, ..., g_{α_{N−1}}, x^j}`.
///
/// Each curve missing from `α` divides the weight, and each curve in `α`
/// makes its own bracket vanish, so all curves stay invariant.
pub fn build_multiplier_sum(
    curves: &CurveSet,
    mus: &BTreeMap<Vec<usize>, MPoly>,
) -> Result<VectorField, BuilderError> {
    let vars = curves.vars().clone();
    let n = vars.len();
    let s = curves.len();
    let coords: Vec<MPoly> = (0..n).map(|j| MPoly::var_at(&vars, j)).collect();
    let mut comps = vec![MPoly::zero(&vars); n];
    for (alpha, mu) in mus {
        if alpha.len() + 1 != n || alpha.iter().any(|&a| a >= s + n) {
            return Err(BuilderError::BadIndex(alpha.clone()));
        }
        if mu.vars() != &vars {
            return Err(BracketError::VariableMismatch.into());
        }
        if mu.is_zero() {
            continue;
        }
        let in_alpha: Vec<usize> = alpha.iter().copied().filter(|&a| a < s).collect();
        let weight = mu * &curves.product_except(&in_alpha);
        let mut row: Vec<MPoly> = alpha
            .iter()
            .map(|&a| {
                if a < s {
                    curves.curves[a].clone()
                } else {
                    coords[a - s].clone()
                }
            })
            .collect();
        row.push(MPoly::zero(&vars));
        for (j, xj) in coords.iter().enumerate() {
            row[n - 1] = xj.clone();
            let b = bracket_n(&row)?;
            if !b.is_zero() {
                comps[j] = &comps[j] + &(&weight * &b);
            }
        }
    }
    Ok(VectorField::new(comps)?)
}

/// Cofactor of each curve under `v`, failing on the first non-invariant one.
pub fn certify(curves: &[MPoly], v: &VectorField) -> Result<Vec<MPoly>, BuilderError> {
    curves
        .iter()
        .enumerate()
        .map(|(index, g)| {
            let r = cofactor(g, v)?;
            r.cofactor.ok_or_else(|| {
                InvarianceError::NotInvariant {
                    index,
                    remainder: r.remainder,
                }
                .into()
            })
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod testutil {
    use crate::cli::parse_poly;
    use crate::ratpoly::{make_vars, MPoly, Vars};
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    pub fn xy() -> Vars {
        make_vars(&["x", "y"])
    }

    pub fn p(s: &str) -> MPoly {
        parse_poly(s, &xy()).unwrap()
    }

    /// Dense random polynomial with small nonzero integer coefficients.
    pub fn random_poly(rng: &mut ChaCha8Rng, vars: &Vars, deg: u32) -> MPoly {
        let terms = crate::ratpoly::monomials_up_to(vars.len(), deg)
            .into_iter()
            .map(|m| {
                let mut c: i64 = rng.gen_range(-4..=4);
                if c == 0 {
                    c = 1;
                }
                (m, crate::ratpoly::int(c))
            });
        MPoly::from_terms(vars, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;
    use crate::brackets::directional;
    use crate::invariance::find_invariant_curve;
    use crate::ratpoly::{int, make_vars};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_circle_is_a_rotation() {
        let vars = xy();
        let cs = CurveSet::new(vec![p("x^2 + y^2 - 1")]).unwrap();
        let v = build_planar(&cs, &MultiplierSet::new(vec![p("1")], &vars)).unwrap();
        assert_eq!(v.component(0), &p("-2*y"));
        assert_eq!(v.component(1), &p("2*x"));
        assert_eq!(certify(&cs.curves, &v).unwrap(), vec![p("0")]);
    }

    #[test]
    fn empty_curve_set_is_rejected() {
        assert_eq!(CurveSet::new(vec![]), Err(BuilderError::EmptyCurves));
    }

    #[test]
    fn count_mismatch_is_rejected() {
        let vars = xy();
        let cs = CurveSet::new(vec![p("x"), p("y")]).unwrap();
        let err = build_planar(&cs, &MultiplierSet::new(vec![p("1")], &vars)).unwrap_err();
        assert!(matches!(err, BuilderError::CountMismatch { .. }));
    }

    #[test]
    fn parabola_system_from_multipliers() {
        // λ_1 = 2x on the parabola with extras (−α, β) at α = 2, β = 3.
        let vars = xy();
        let g = p("(x+y)^2 - 2*x");
        let cs = CurveSet::new(vec![g.clone()]).unwrap();
        let m = MultiplierSet::new(vec![p("2*x")], &vars).with_extra(p("-2"), p("3"));
        let v = build_planar(&cs, &m).unwrap();
        assert_eq!(v.component(0), &(&g.scale(&int(3)) - &p("4*x*(x+y)")));
        assert_eq!(v.component(1), &(&g.scale(&int(2)) + &p("4*x*(x+y) - 4*x")));
        assert_eq!(certify(&[g], &v).unwrap(), vec![p("10*x + 10*y - 6")]);
    }

    #[test]
    fn random_conics_stay_invariant() {
        let vars = xy();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let curves: Vec<MPoly> = (0..3).map(|_| random_poly(&mut rng, &vars, 2)).collect();
            let lambdas = (0..3).map(|_| random_poly(&mut rng, &vars, 1)).collect();
            let cs = CurveSet::new(curves).unwrap();
            let m = MultiplierSet::new(lambdas, &vars)
                .with_extra(random_poly(&mut rng, &vars, 1), random_poly(&mut rng, &vars, 1));
            let v = build_planar(&cs, &m).unwrap();
            certify(&cs.curves, &v).unwrap();
        }
    }

    #[test]
    fn ndim_coordinate_curves() {
        let vars = xy();
        let v = build_ndim(&[p("x"), p("y")], &[p("x"), p("y")]).unwrap();
        assert_eq!(v.components(), &[p("x"), p("y")]);
        let v3 = make_vars(&["x", "y", "z"]);
        let c: Vec<MPoly> = (0..3).map(|i| MPoly::var_at(&v3, i)).collect();
        let phis = vec![
            crate::cli::parse_poly("y*z + 1", &v3).unwrap(),
            crate::cli::parse_poly("x^2", &v3).unwrap(),
            crate::cli::parse_poly("-x*y*z", &v3).unwrap(),
        ];
        let v = build_ndim(&c, &phis).unwrap();
        assert_eq!(v.components(), phis.as_slice());
        let _ = vars;
    }

    #[test]
    fn ndim_contract_and_degenerate_bracket() {
        let v3 = make_vars(&["x", "y", "z"]);
        let q = |s: &str| crate::cli::parse_poly(s, &v3).unwrap();
        let gs = vec![q("x^2 + y"), q("y*z - 1"), q("x + z^2")];
        let phis = vec![q("x - 1"), q("y*z"), q("2")];
        let v = build_ndim(&gs, &phis).unwrap();
        let ups = bracket_n(&gs).unwrap();
        for (g, phi) in gs.iter().zip(&phis) {
            assert_eq!(directional(g, &v).unwrap(), phi * &ups);
        }
        let err = build_ndim(&[q("x"), q("2*x"), q("z")], &phis).unwrap_err();
        assert_eq!(err, BuilderError::DegenerateBracket);
    }

    #[test]
    fn ndim_matches_planar_on_two_curves() {
        // S = N = 2: Φ = (−λ_2 g_1, λ_1 g_2) reproduces the planar sum.
        let vars = xy();
        let g1 = p("x^2 + y^2 - 1");
        let g2 = p("y - x^2");
        let l1 = p("x + 1");
        let l2 = p("y");
        let cs = CurveSet::new(vec![g1.clone(), g2.clone()]).unwrap();
        let planar = build_planar(&cs, &MultiplierSet::new(vec![l1.clone(), l2.clone()], &vars))
            .unwrap();
        let nd = build_ndim(&[g1.clone(), g2.clone()], &[-&(&l2 * &g1), &l1 * &g2]).unwrap();
        assert_eq!(planar, nd);
    }

    #[test]
    fn multiplier_sum_reduces_to_planar() {
        let vars = xy();
        let cs = CurveSet::new(vec![p("x^2 + y^2 - 4"), p("x - y + 1")]).unwrap();
        let l = [p("x"), p("2"), p("y - 1"), p("x*y")];
        let mut mus = BTreeMap::new();
        mus.insert(vec![0], l[0].clone());
        mus.insert(vec![1], l[1].clone());
        mus.insert(vec![2], -&l[2]);
        mus.insert(vec![3], -&l[3]);
        let sum = build_multiplier_sum(&cs, &mus).unwrap();
        let m = MultiplierSet::new(l[..2].to_vec(), &vars).with_extra(l[2].clone(), l[3].clone());
        assert_eq!(sum, build_planar(&cs, &m).unwrap());
    }

    #[test]
    fn multiplier_sum_in_three_dimensions() {
        let v3 = make_vars(&["x", "y", "z"]);
        let q = |s: &str| crate::cli::parse_poly(s, &v3).unwrap();
        let cs = CurveSet::new(vec![q("x^2 + y^2 + z^2 - 1"), q("x + y*z"), q("z - x*y")])
            .unwrap();
        let mut mus = BTreeMap::new();
        mus.insert(vec![0, 1], q("1"));
        mus.insert(vec![1, 2], q("x - z"));
        mus.insert(vec![0, 5], q("y"));
        mus.insert(vec![3, 4], q("2"));
        mus.insert(vec![2, 2], q("7"));
        let v = build_multiplier_sum(&cs, &mus).unwrap();
        assert!(v.components().iter().any(|c| !c.is_zero()));
        certify(&cs.curves, &v).unwrap();
        assert!(matches!(
            build_multiplier_sum(&cs, &BTreeMap::from([(vec![6, 0], q("1"))])),
            Err(BuilderError::BadIndex(_))
        ));
    }

    #[test]
    fn two_line_round_trip_through_search() {
        let vars = xy();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let g1 = random_poly(&mut rng, &vars, 1);
            let g2 = random_poly(&mut rng, &vars, 1);
            let cs = CurveSet::new(vec![g1.clone(), g2.clone()]).unwrap();
            let m = MultiplierSet::new(
                vec![random_poly(&mut rng, &vars, 0), random_poly(&mut rng, &vars, 0)],
                &vars,
            )
            .with_extra(random_poly(&mut rng, &vars, 0), random_poly(&mut rng, &vars, 0));
            let v = build_planar(&cs, &m).unwrap();
            let found = find_invariant_curve(&v, 1, v.degree().saturating_sub(1));
            for g in [g1, g2] {
                assert!(
                    found.iter().any(|(h, _)| h == &g.monic()),
                    "missing {g} in {found:?}"
                );
            }
        }
    }
}
