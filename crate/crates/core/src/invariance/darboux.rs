use std::collections::BTreeSet;

use num_traits::Zero;

use crate::brackets::VectorField;
use crate::linalg::null_space;
use crate::ratpoly::{MPoly, Monomial, Rat};

use super::{cofactor, InvarianceError};

/// Exponents `sigma_j` with `sum sigma_j K_j = residual`; valid iff the
/// residual is zero, in which case `prod g_j^sigma_j` is a first integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxCertificate {
    pub exponents: Vec<Rat>,
    pub residual: MPoly,
}

impl DarbouxCertificate {
    pub fn is_valid(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Basis of all exponent vectors annihilating the cofactors, in reduced
/// echelon form. Every curve must be invariant under `v`.
pub fn darboux_search(
    curves: &[MPoly],
    v: &VectorField,
) -> Result<Vec<DarbouxCertificate>, InvarianceError> {
    let mut ks = Vec::with_capacity(curves.len());
    for (index, g) in curves.iter().enumerate() {
        let r = cofactor(g, v)?;
        match r.cofactor {
            Some(k) => ks.push(k),
            None => {
                return Err(InvarianceError::NotInvariant {
                    index,
                    remainder: r.remainder,
                })
            }
        }
    }
    let monos: BTreeSet<Monomial> = ks
        .iter()
        .flat_map(|k| k.terms().map(|(m, _)| m.clone()))
        .collect();
    let rows: Vec<Vec<Rat>> = monos
        .iter()
        .map(|m| ks.iter().map(|k| k.coeff(m)).collect())
        .collect();
    let basis = null_space(&rows, ks.len());
    Ok(basis
        .into_iter()
        .map(|sigma| {
            let mut residual = MPoly::zero(v.vars());
            for (s, k) in sigma.iter().zip(&ks) {
                if !s.is_zero() {
                    residual = &residual + &k.scale(s);
                }
            }
            DarbouxCertificate {
                exponents: sigma,
                residual,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::directional;
    use crate::cli::parse_poly;
    use crate::ratpoly::strategies::vars;
    use crate::ratpoly::{int, rat};

    fn p(s: &str) -> MPoly {
        parse_poly(s, &vars(&["x", "y"])).unwrap()
    }

    /// The polynomial form of d/dt log prod g_j^s_j = 0.
    fn log_derivative_identity(curves: &[MPoly], v: &VectorField, sigma: &[Rat]) -> MPoly {
        let mut acc = MPoly::zero(v.vars());
        for (j, (g, s)) in curves.iter().zip(sigma).enumerate() {
            let mut term = directional(g, v).unwrap().scale(s);
            for (m, h) in curves.iter().enumerate() {
                if m != j {
                    term = &term * h;
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    #[test]
    fn equal_cofactors() {
        let v = VectorField::planar(p("x"), p("y")).unwrap();
        let certs = darboux_search(&[p("x"), p("y")], &v).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].exponents, vec![int(1), int(-1)]);
        assert!(certs[0].is_valid());
    }

    #[test]
    fn lienard_example() {
        // x' = y + h, y' = alpha h h' with h = x, alpha = 2.
        let v = VectorField::planar(p("y + x"), p("2*x")).unwrap();
        let curves = [p("y + 2*x"), p("y - x")];
        let certs = darboux_search(&curves, &v).unwrap();
        assert_eq!(certs.len(), 1);
        let s = &certs[0].exponents;
        assert_eq!(&s[1] / &s[0], int(2));
        let sigma = [rat(1, 3), rat(2, 3)];
        assert!(log_derivative_identity(&curves, &v, &sigma).is_zero());
    }

    #[test]
    fn non_invariant_curve_is_an_error() {
        let v = VectorField::planar(p("-y"), p("x")).unwrap();
        let e = darboux_search(&[p("x^2+y^2"), p("x")], &v).unwrap_err();
        assert!(matches!(e, InvarianceError::NotInvariant { index: 1, .. }));
    }

    #[test]
    fn independent_cofactors_give_no_certificate() {
        let v = VectorField::planar(p("x"), p("-y + x^2")).unwrap();
        let certs = darboux_search(&[p("x")], &v).unwrap();
        assert!(certs.is_empty());
    }
}
