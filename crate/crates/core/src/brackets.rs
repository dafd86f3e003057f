//! Jacobian brackets, directional derivatives and the vector-field type.

use thiserror::Error;

use crate::ratpoly::{MPoly, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("expected {expected} polynomials or variables, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("operands are over different variable lists")]
    VariableMismatch,
}

/// `N` polynomial components over `N` shared variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    vars: Vars,
    components: Vec<MPoly>,
}

impl VectorField {
    pub fn new(components: Vec<MPoly>) -> Result<Self, BracketError> {
        let vars = components
            .first()
            .map(|c| c.vars().clone())
            .ok_or(BracketError::Dimension {
                expected: 1,
                got: 0,
            })?;
        if components.len() != vars.len() {
            return Err(BracketError::Dimension {
                expected: vars.len(),
                got: components.len(),
            });
        }
        if components.iter().any(|c| c.vars() != &vars) {
            return Err(BracketError::VariableMismatch);
        }
        Ok(VectorField { vars, components })
    }

    pub fn planar(p: MPoly, q: MPoly) -> Result<Self, BracketError> {
        VectorField::new(vec![p, q])
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn components(&self) -> &[MPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MPoly {
        &self.components[i]
    }

    /// max degree of the components.
    pub fn degree(&self) -> u32 {
        self.components.iter().map(MPoly::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &crate::ratpoly::Rat) -> VectorField {
        VectorField {
            vars: self.vars.clone(),
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }

    /// Jacobian matrix of partial derivatives, row per component.
    pub fn jacobian(&self) -> Vec<Vec<MPoly>> {
        self.components
            .iter()
            .map(|c| (0..self.dim()).map(|j| c.partial_at(j)).collect())
            .collect()
    }
}

fn check_shared(ps: &[&MPoly], n: usize) -> Result<(), BracketError> {
    if ps.len() != n {
        return Err(BracketError::Dimension {
            expected: n,
            got: ps.len(),
        });
    }
    let vars = ps[0].vars();
    if vars.len() != n {
        return Err(BracketError::Dimension {
            expected: n,
            got: vars.len(),
        });
    }
    if ps.iter().any(|p| p.vars() != vars) {
        return Err(BracketError::VariableMismatch);
    }
    Ok(())
}

/// `{f, g} = f_x g_y - f_y g_x`.
pub fn bracket2(f: &MPoly, g: &MPoly) -> Result<MPoly, BracketError> {
    check_shared(&[f, g], 2)?;
    Ok(&f.partial_at(0) * &g.partial_at(1) - &f.partial_at(1) * &g.partial_at(0))
}

/// Jacobian determinant `{f_1, ..., f_N}` with row `i` holding the partials
/// of `f_i`, expanded by cofactors along the last row.
pub fn bracket_n(fs: &[MPoly]) -> Result<MPoly, BracketError> {
    let refs: Vec<&MPoly> = fs.iter().collect();
    if fs.is_empty() {
        return Err(BracketError::Dimension {
            expected: 1,
            got: 0,
        });
    }
    check_shared(&refs, fs[0].nvars())?;
    let jac: Vec<Vec<MPoly>> = fs
        .iter()
        .map(|f| (0..f.nvars()).map(|j| f.partial_at(j)).collect())
        .collect();
    let cols: Vec<usize> = (0..fs.len()).collect();
    Ok(det_laplace(&jac, fs.len(), &cols, fs[0].vars()))
}

// Determinant of the leading `rows` rows restricted to `cols`.
fn det_laplace(m: &[Vec<MPoly>], rows: usize, cols: &[usize], vars: &Vars) -> MPoly {
    if rows == 0 {
        return MPoly::one(vars);
    }
    let last = rows - 1;
    let mut acc = MPoly::zero(vars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[last][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &det_laplace(m, last, &rest, vars);
        // Position (last, k) in the current minor.
        if (last + k).is_multiple_of(2) {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

/// `dg(v) = sum_i v^i * d_i g`.
pub fn directional(g: &MPoly, v: &VectorField) -> Result<MPoly, BracketError> {
    if g.vars() != v.vars() {
        return Err(BracketError::VariableMismatch);
    }
    let mut acc = MPoly::zero(v.vars());
    for (i, c) in v.components().iter().enumerate() {
        acc = &acc + &(c * &g.partial_at(i));
    }
    Ok(acc)
}

/// Alternating sum
/// `sum_{i=1}^{N+1} (-1)^{i+N+1} {f_1..f_{N-1}, h_i} {h_1..^h_i..h_{N+1}}`
/// with `h = (g_1, ..., g_N, G)`. It is the last-column Laplace expansion of
/// an `(N+1)`-square determinant with two equal columns, hence identically
/// zero. At `N = 2` it is the three-term identity
/// `{f,g1}{g2,G} + {f,g2}{G,g1} + {f,G}{g1,g2} = 0`.
pub fn plucker_residual(fs: &[MPoly], gs: &[MPoly], big_g: &MPoly) -> Result<MPoly, BracketError> {
    let n = gs.len();
    if n == 0 || fs.len() + 1 != n {
        return Err(BracketError::Dimension {
            expected: n.max(1) - 1,
            got: fs.len(),
        });
    }
    let mut h: Vec<MPoly> = gs.to_vec();
    h.push(big_g.clone());
    let vars = big_g.vars().clone();
    let mut acc = MPoly::zero(&vars);
    for i in 0..=n {
        let mut left = fs.to_vec();
        left.push(h[i].clone());
        let right: Vec<MPoly> = h
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let term = &bracket_n(&left)? * &bracket_n(&right)?;
        // (-1)^{(i+1)+N+1} with 1-based index i+1.
        if (i + n).is_multiple_of(2) {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_poly;
    use crate::ratpoly::strategies::{poly, vars};
    use crate::ratpoly::int;
    use proptest::prelude::*;

    fn p2(s: &str) -> MPoly {
        parse_poly(s, &vars(&["x", "y"])).unwrap()
    }

    fn p3(s: &str) -> MPoly {
        parse_poly(s, &vars(&["x", "y", "z"])).unwrap()
    }

    #[test]
    fn canonical_pair() {
        assert_eq!(bracket2(&p2("x"), &p2("y")).unwrap(), p2("1"));
        let f = p2("x^2*y + 3*y");
        assert!(bracket2(&f, &f).unwrap().is_zero());
        assert_eq!(
            bracket2(&p3("x"), &p3("y")),
            Err(BracketError::Dimension { expected: 2, got: 3 })
        );
    }

    #[test]
    fn n_ary() {
        assert_eq!(
            bracket_n(&[p3("x"), p3("y"), p3("z")]).unwrap(),
            p3("1")
        );
        assert!(bracket_n(&[p3("x*y"), p3("z"), p3("x*y")]).unwrap().is_zero());
        // Swapping two arguments flips the sign.
        let a = bracket_n(&[p3("x^2+y"), p3("y*z"), p3("z^2 - x")]).unwrap();
        let b = bracket_n(&[p3("y*z"), p3("x^2+y"), p3("z^2 - x")]).unwrap();
        assert_eq!(a, -b);
        assert!(bracket_n(&[p3("x"), p3("y")]).is_err());
    }

    #[test]
    fn example_conic_bracket() {
        // g_j = nu_j (x^2 - l0) - y^2 + l1 gives {g1, g2} = 4xy(nu2 - nu1).
        let g1 = p2("4*(x^2 - 2/5) - y^2 + 3/5");
        let g2 = p2("1*(x^2 - 2/5) - y^2 + 3/5");
        assert_eq!(bracket2(&g1, &g2).unwrap(), p2("4*x*y*(1 - 4)"));
    }

    #[test]
    fn directional_examples() {
        let circle = p2("x^2 + y^2 - 1");
        let rot = VectorField::planar(p2("-y"), p2("x")).unwrap();
        assert!(directional(&circle, &rot).unwrap().is_zero());
        let zero = VectorField::planar(p2("0"), p2("0")).unwrap();
        assert!(directional(&circle, &zero).unwrap().is_zero());
        assert_eq!(
            directional(&p3("x"), &rot),
            Err(BracketError::VariableMismatch)
        );
    }

    #[test]
    fn vector_field_validation() {
        assert!(VectorField::new(vec![p2("x")]).is_err());
        assert!(VectorField::new(vec![p2("x"), p3("y")]).is_err());
        let v = VectorField::planar(p2("x^3"), p2("y")).unwrap();
        assert_eq!(v.degree(), 3);
    }

    #[test]
    fn plucker_equal_arguments() {
        let g = p2("x^2 - y");
        assert!(plucker_residual(std::slice::from_ref(&g), &[g.clone(), g.clone()], &g)
            .unwrap()
            .is_zero());
        assert!(plucker_residual(&[g.clone(), g.clone()], std::slice::from_ref(&g), &g).is_err());
    }

    const XY: &[&str] = &["x", "y"];
    const XYZ: &[&str] = &["x", "y", "z"];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn antisymmetry_and_leibniz(f in poly(XY, 3), g in poly(XY, 3), h in poly(XY, 3)) {
            prop_assert_eq!(bracket2(&f, &g).unwrap(), -bracket2(&g, &f).unwrap());
            let lhs = bracket2(&(&f * &h), &g).unwrap();
            let rhs = &f * &bracket2(&h, &g).unwrap() + &h * &bracket2(&f, &g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dependent_arguments(f in poly(XY, 3)) {
            prop_assert!(bracket2(&f, &f.pow(2)).unwrap().is_zero());
        }

        #[test]
        fn n2_matches_bracket2(f in poly(XY, 3), g in poly(XY, 3)) {
            prop_assert_eq!(bracket_n(&[f.clone(), g.clone()]).unwrap(), bracket2(&f, &g).unwrap());
        }

        #[test]
        fn ternary_identity(a in poly(XY, 3), b in poly(XY, 3), c in poly(XY, 3), d in poly(XY, 3)) {
            // {a,b}{c,d} + {a,d}{b,c} + {c,a}{b,d} = 0
            let t = bracket2(&a, &b).unwrap() * bracket2(&c, &d).unwrap()
                + bracket2(&a, &d).unwrap() * bracket2(&b, &c).unwrap()
                + bracket2(&c, &a).unwrap() * bracket2(&b, &d).unwrap();
            prop_assert!(t.is_zero());
            prop_assert!(plucker_residual(&[a], &[b, c], &d).unwrap().is_zero());
        }

        #[test]
        fn plucker_n3(f1 in poly(XYZ, 2), f2 in poly(XYZ, 2), g1 in poly(XYZ, 2),
                      g2 in poly(XYZ, 2), g3 in poly(XYZ, 2), big in poly(XYZ, 2)) {
            prop_assert!(plucker_residual(&[f1, f2], &[g1, g2, g3], &big).unwrap().is_zero());
        }

        #[test]
        fn multilinear_in_scaling(f in poly(XYZ, 2), g in poly(XYZ, 2), h in poly(XYZ, 2)) {
            let base = bracket_n(&[f.clone(), g.clone(), h.clone()]).unwrap();
            let scaled = bracket_n(&[f.scale(&int(3)), g, h]).unwrap();
            prop_assert_eq!(scaled, base.scale(&int(3)));
        }
    }
}
