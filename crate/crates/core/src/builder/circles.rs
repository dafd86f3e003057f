//! Fields with invariant circles, including the two-nest family.

use num_traits::{Signed, Zero};

use super::{certify, BuilderError, MultiplierSet};
use crate::brackets::VectorField;
use crate::ratpoly::{make_vars, MPoly, Rat, Vars};

/// Circles `(x − a_j)² + (y − b_j)² − r_j² = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleSpec {
    pub centers: Vec<(Rat, Rat)>,
    pub radii: Vec<Rat>,
}

impl CircleSpec {
    pub fn new(centers: Vec<(Rat, Rat)>, radii: Vec<Rat>) -> Result<Self, BuilderError> {
        if centers.is_empty() {
            return Err(BuilderError::EmptyCurves);
        }
        if centers.len() != radii.len() {
            return Err(BuilderError::CountMismatch {
                curves: centers.len(),
                multipliers: radii.len(),
            });
        }
        if radii.iter().any(|r| !r.is_positive()) {
            return Err(BuilderError::NonPositiveRadius);
        }
        Ok(CircleSpec { centers, radii })
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn curves(&self, vars: &Vars) -> Vec<MPoly> {
        self.centers
            .iter()
            .zip(&self.radii)
            .map(|((a, b), r)| circle(vars, a, b, r))
            .collect()
    }
}

fn circle(vars: &Vars, a: &Rat, b: &Rat, r: &Rat) -> MPoly {
    let x = MPoly::var_at(vars, 0) - MPoly::constant(vars, a.clone());
    let y = MPoly::var_at(vars, 1) - MPoly::constant(vars, b.clone());
    &(&x * &x + &y * &y) - &MPoly::constant(vars, r * r)
}

/// Circle field with its degree against the a priori bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleReport {
    pub field: VectorField,
    pub curves: Vec<MPoly>,
    pub cofactors: Vec<MPoly>,
    pub degree: u32,
    /// `Σ λ_j ≠ 0`, selecting which bound applies.
    pub sum_nonzero: bool,
    pub s1: u32,
    pub s2: u32,
    pub bound: u32,
    pub holds: bool,
}

/// `P = −Σ λ_j (y − b_j) Π_{m≠j} g_m`, `Q = Σ λ_j (x − a_j) Π_{m≠j} g_m`.
///
/// The degree bound is `2S − 1 + deg Σλ_j` when `Σλ_j ≠ 0` and
/// `2S − 2 + max(deg Σλ_j b_j, deg Σλ_j a_j)` otherwise. It presumes the
/// leading forms of the sums do not cancel against each other; when they do,
/// `holds` is false and the report says so instead of failing.
pub fn build_circles(spec: &CircleSpec, mult: &MultiplierSet) -> Result<CircleReport, BuilderError> {
    if spec.is_empty() {
        return Err(BuilderError::EmptyCurves);
    }
    if spec.len() != mult.lambdas.len() {
        return Err(BuilderError::CountMismatch {
            curves: spec.len(),
            multipliers: mult.lambdas.len(),
        });
    }
    if !mult.extra.0.is_zero() || !mult.extra.1.is_zero() {
        return Err(BuilderError::NonZeroExtras);
    }
    let vars = mult.lambdas[0].vars().clone();
    if vars.len() != 2 {
        return Err(BuilderError::NotPlanar);
    }
    let curves = spec.curves(&vars);
    let x = MPoly::var_at(&vars, 0);
    let y = MPoly::var_at(&vars, 1);
    let mut p = MPoly::zero(&vars);
    let mut q = MPoly::zero(&vars);
    let mut sum = MPoly::zero(&vars);
    let mut sum_a = MPoly::zero(&vars);
    let mut sum_b = MPoly::zero(&vars);
    for (j, lam) in mult.lambdas.iter().enumerate() {
        let (a, b) = &spec.centers[j];
        sum = &sum + lam;
        sum_a = &sum_a + &lam.scale(a);
        sum_b = &sum_b + &lam.scale(b);
        if lam.is_zero() {
            continue;
        }
        let rest = curves
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != j)
            .fold(lam.clone(), |acc, (_, g)| &acc * g);
        p = p - &(&y - &MPoly::constant(&vars, b.clone())) * &rest;
        q = q + &(&x - &MPoly::constant(&vars, a.clone())) * &rest;
    }
    let field = VectorField::planar(p, q)?;
    let cofactors = certify(&curves, &field)?;
    let s = spec.len() as u32;
    let sum_nonzero = !sum.is_zero();
    let s1 = sum.degree();
    let s2 = sum_a.degree().max(sum_b.degree());
    let bound = if sum_nonzero {
        2 * s - 1 + s1
    } else {
        (2 * s + s2).saturating_sub(2)
    };
    let degree = field.degree();
    Ok(CircleReport {
        field,
        curves,
        cofactors,
        degree,
        sum_nonzero,
        s1,
        s2,
        bound,
        holds: degree <= bound,
    })
}

/// Two nests of `l` circles each, centered at `(0, 0)` and `(a, 0)` with the
/// same radii:
///
/// `F_a = (x + y − a) Π ((x − a)² + y² − r_j²)`, `F_0 = F_a|_{a=0}`,
/// `P = (F_0 − F_a) y`, `Q = −(F_0 − F_a) x + a F_0`.
///
/// Returns the field and the `2l` circles, each certified invariant.
pub fn build_two_nests(a: &Rat, radii: &[Rat]) -> Result<(VectorField, Vec<MPoly>), BuilderError> {
    if radii.is_empty() {
        return Err(BuilderError::EmptyNest);
    }
    if radii.iter().any(|r| !r.is_positive()) {
        return Err(BuilderError::NonPositiveRadius);
    }
    let vars = make_vars(&["x", "y"]);
    let x = MPoly::var_at(&vars, 0);
    let y = MPoly::var_at(&vars, 1);
    let zero = Rat::zero();
    let line = |c: &Rat| &(&x + &y) - &MPoly::constant(&vars, c.clone());
    let near: Vec<MPoly> = radii.iter().map(|r| circle(&vars, &zero, &zero, r)).collect();
    let far: Vec<MPoly> = radii.iter().map(|r| circle(&vars, a, &zero, r)).collect();
    let f0 = near.iter().fold(line(&zero), |acc, g| &acc * g);
    let fa = far.iter().fold(line(a), |acc, g| &acc * g);
    let diff = &f0 - &fa;
    let p = &diff * &y;
    let q = &(-&(&diff * &x)) + &f0.scale(a);
    let field = VectorField::planar(p, q)?;
    let curves: Vec<MPoly> = near.into_iter().chain(far).collect();
    if !a.is_zero() {
        certify(&curves, &field)?;
    }
    Ok((field, curves))
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;
    use crate::invariance::cofactor;
    use crate::ratpoly::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(cs: &[(i64, i64, i64)]) -> CircleSpec {
        CircleSpec::new(
            cs.iter().map(|&(a, b, _)| (int(a), int(b))).collect(),
            cs.iter().map(|&(_, _, r)| int(r)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_circle_degree_one() {
        let r = build_circles(&spec(&[(0, 0, 1)]), &MultiplierSet::new(vec![p("1")], &xy())).unwrap();
        assert_eq!(r.field.components(), &[p("-y"), p("x")]);
        assert_eq!((r.degree, r.bound, r.holds), (1, 1, true));
        assert_eq!(r.cofactors, vec![p("0")]);
    }

    #[test]
    fn planar_builder_is_twice_the_circle_field() {
        let sp = spec(&[(0, 0, 1), (3, 1, 2)]);
        let lam = vec![p("x + 1"), p("2*y")];
        let r = build_circles(&sp, &MultiplierSet::new(lam.clone(), &xy())).unwrap();
        let cs = super::super::CurveSet::new(sp.curves(&xy())).unwrap();
        let planar = super::super::build_planar(&cs, &MultiplierSet::new(lam, &xy())).unwrap();
        assert_eq!(planar, r.field.scale(&int(2)));
    }

    #[test]
    fn concentric_pair_with_cancelling_multipliers() {
        let r = build_circles(
            &spec(&[(0, 0, 1), (0, 0, 2)]),
            &MultiplierSet::new(vec![p("1"), p("-1")], &xy()),
        )
        .unwrap();
        assert!(!r.sum_nonzero);
        assert_eq!(r.bound, 2);
        assert!(r.degree <= 2);
        assert!(r.holds);
    }

    #[test]
    fn leading_form_cancellation_exceeds_bound() {
        // Σλ = 1 has degree 0, yet the x² parts of the individual terms
        // survive in the field because the circles differ.
        let r = build_circles(
            &spec(&[(0, 0, 1), (3, 0, 1)]),
            &MultiplierSet::new(vec![p("x^2"), p("1 - x^2")], &xy()),
        )
        .unwrap();
        assert!(r.sum_nonzero);
        assert_eq!((r.s1, r.bound, r.degree), (0, 3, 4));
        assert!(!r.holds);
    }

    #[test]
    fn random_four_circles_within_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let cs: Vec<(i64, i64, i64)> = (0..4)
                .map(|_| (rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(1..=4)))
                .collect();
            let lam = (0..4).map(|_| random_poly(&mut rng, &xy(), 1)).collect();
            let r = build_circles(&spec(&cs), &MultiplierSet::new(lam, &xy())).unwrap();
            assert!(r.holds, "degree {} bound {}", r.degree, r.bound);
        }
    }

    #[test]
    fn extras_and_radius_are_validated() {
        let m = MultiplierSet::new(vec![p("1")], &xy()).with_extra(p("x"), p("0"));
        assert_eq!(
            build_circles(&spec(&[(0, 0, 1)]), &m),
            Err(BuilderError::NonZeroExtras)
        );
        assert_eq!(
            CircleSpec::new(vec![(int(0), int(0))], vec![int(0)]),
            Err(BuilderError::NonPositiveRadius)
        );
    }

    #[test]
    fn two_nests_cubic() {
        let (v, curves) = build_two_nests(&int(4), &[int(1)]).unwrap();
        assert_eq!(v.degree(), 3);
        assert_eq!(curves, vec![p("x^2 + y^2 - 1"), p("x^2 - 8*x + y^2 + 15")]);
        for g in &curves {
            assert!(cofactor(g, &v).unwrap().is_invariant());
        }
        // Critical points on the axis.
        for x0 in [0, 2, 4] {
            let pt = [int(x0), int(0)];
            assert!(v.component(0).eval(&pt).unwrap().is_zero());
            assert!(v.component(1).eval(&pt).unwrap().is_zero());
        }
    }

    #[test]
    fn two_nests_degree_and_collapse() {
        let (v, curves) = build_two_nests(&int(5), &[int(1), rat(3, 2)]).unwrap();
        assert_eq!(v.degree(), 5);
        assert_eq!(curves.len(), 4);
        let (v0, _) = build_two_nests(&int(0), &[int(1)]).unwrap();
        assert!(v0.components().iter().all(MPoly::is_zero));
        assert_eq!(build_two_nests(&int(4), &[]), Err(BuilderError::EmptyNest));
    }

    #[test]
    fn two_nests_saddle_between_nests() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = int(rng.gen_range(3..=9));
            let l = rng.gen_range(1..=3);
            let radii: Vec<Rat> = (0..l)
                .map(|_| rat(rng.gen_range(1..=20), 20) * &a / int(2))
                .filter(|r| r < &(&a / int(2)))
                .collect();
            if radii.is_empty() {
                continue;
            }
            let (v, _) = build_two_nests(&a, &radii).unwrap();
            let pt = [&a / int(2), int(0)];
            let j = v.jacobian();
            let e = |i: usize, k: usize| j[i][k].eval(&pt).unwrap();
            let det = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
            assert!(det.is_negative());
        }
    }
}
