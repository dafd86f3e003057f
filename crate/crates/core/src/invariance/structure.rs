use num_traits::Zero;

use crate::brackets::VectorField;
use crate::ratpoly::{MPoly, Monomial, Rat};

use super::{cofactor, InvarianceError};

/// Which degree bound applies to a quadratic field
/// `P = p0 y^2 + p1(x) y + p2(x)`, `Q = q0 y^2 + q1(x) y + q2(x)`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeBranch {
    /// `p0 != 0`: `deg a_j <= j`, `deg g <= S`.
    P0Nonzero,
    /// `p0 = 0`, `p11 != 0`: `deg a_j <= k j + m`, `deg g <= S k + m` with
    /// `k = q0 / p11` and `m = deg a_0`.
    P11Nonzero { k: String, m: u32 },
    /// `p0 = p11 = 0`: `deg a_j <= j`, `deg g <= S`.
    P11Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    /// Degree of `g` in `y`; `g = sum_j a_j(x) y^(S-j)`.
    pub s: u32,
    pub branch: DegreeBranch,
    /// `deg a_j`, `None` for a zero coefficient.
    pub a_degrees: Vec<Option<u32>>,
    pub a_bounds: Vec<Rat>,
    pub degree: u32,
    pub degree_bound: Rat,
    /// Whether the `y` coefficient of the cofactor matches the leading
    /// balance (`(S k + m) p11` or `S q0`); `None` if `g` is not invariant.
    pub alpha0_consistent: Option<bool>,
    pub holds: bool,
}

/// Checks the coefficient-degree bounds of an invariant curve of a
/// quadratic field written in powers of `y`.
pub fn verify_degree_structure(g: &MPoly, v: &VectorField) -> Result<DegreeReport, InvarianceError> {
    if v.dim() != 2 {
        return Err(InvarianceError::Shape("field is not planar".into()));
    }
    if v.degree() > 2 {
        return Err(InvarianceError::Shape(format!(
            "components have degree {} > 2",
            v.degree()
        )));
    }
    if g.is_zero() {
        return Err(InvarianceError::ZeroCurve);
    }
    if g.vars() != v.vars() {
        return Err(InvarianceError::Bracket(crate::brackets::BracketError::VariableMismatch));
    }
    let coeff = |p: &MPoly, i: u32, j: u32| p.coeff(&Monomial::new(vec![i, j]));
    let (p, q) = (v.component(0), v.component(1));
    let p0 = coeff(p, 0, 2);
    let p11 = coeff(p, 1, 1);
    let q0 = coeff(q, 0, 2);
    let ys = g.coefficients_in(1);
    let s = ys.len() as u32 - 1;
    // a_j multiplies y^(S-j).
    let a_degrees: Vec<Option<u32>> = (0..=s)
        .map(|j| {
            let a = &ys[(s - j) as usize];
            (!a.is_zero()).then(|| a.degree())
        })
        .collect();
    let sr = Rat::from_integer(s.into());
    let (branch, a_bounds, degree_bound, alpha0) = if !p0.is_zero() {
        let b = (0..=s).map(|j| Rat::from_integer(j.into())).collect();
        (DegreeBranch::P0Nonzero, b, sr.clone(), None)
    } else if !p11.is_zero() {
        let k = &q0 / &p11;
        let m = a_degrees[0].unwrap_or(0);
        let mr = Rat::from_integer(m.into());
        let b = (0..=s)
            .map(|j| &k * Rat::from_integer(j.into()) + &mr)
            .collect();
        let bound = &k * &sr + &mr;
        let alpha0 = &bound * &p11;
        (
            DegreeBranch::P11Nonzero {
                k: k.to_string(),
                m,
            },
            b,
            bound,
            Some(alpha0),
        )
    } else {
        let b = (0..=s).map(|j| Rat::from_integer(j.into())).collect();
        (DegreeBranch::P11Zero, b, sr.clone(), Some(&sr * &q0))
    };
    let alpha0_consistent = match cofactor(g, v)?.cofactor {
        Some(k) => {
            let got = k.coeff(&Monomial::new(vec![0, 1]));
            Some(alpha0.is_none_or(|a| a == got))
        }
        None => None,
    };
    let degree = g.degree();
    let holds = a_degrees
        .iter()
        .zip(&a_bounds)
        .all(|(d, b): (&Option<u32>, &Rat)| d.is_none_or(|d| Rat::from_integer(d.into()) <= *b))
        && Rat::from_integer(degree.into()) <= degree_bound;
    Ok(DegreeReport {
        s,
        branch,
        a_degrees,
        a_bounds,
        degree,
        degree_bound,
        alpha0_consistent,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_poly;
    use crate::ratpoly::strategies::vars;
    use crate::ratpoly::{int, rat};

    fn p(s: &str) -> MPoly {
        parse_poly(s, &vars(&["x", "y"])).unwrap()
    }

    #[test]
    fn parabola_p0_branch() {
        let g = "((x+y)^2 - 2*x)";
        let v = VectorField::planar(
            p(&format!("{g} - 4*x*(x+y)")),
            p(&format!("{g} + 4*x*(x+y) - 4*x")),
        )
        .unwrap();
        let r = verify_degree_structure(&p(g), &v).unwrap();
        assert_eq!(r.branch, DegreeBranch::P0Nonzero);
        assert_eq!(r.s, 2);
        assert_eq!(r.a_degrees, vec![Some(0), Some(1), Some(2)]);
        assert!(r.holds);
        assert_eq!(r.alpha0_consistent, Some(true));
    }

    #[test]
    fn filipstov_p11_branch() {
        let v = VectorField::planar(
            p("12*x + 2*y - 18*x^2 + 12*x*y"),
            p("30*y + 6*x^2 - 28*x*y + 16*y^2"),
        )
        .unwrap();
        let g = p("6*(x^2 + y)^2 + 2*y^2*(2*y - 6*x)");
        let r = verify_degree_structure(&g, &v).unwrap();
        assert_eq!(
            r.branch,
            DegreeBranch::P11Nonzero {
                k: "4/3".into(),
                m: 0
            }
        );
        assert_eq!(r.degree_bound, int(4));
        assert_eq!(r.a_bounds[1], rat(4, 3));
        assert!(r.holds);
        assert_eq!(r.alpha0_consistent, Some(true));
    }

    #[test]
    fn shape_errors() {
        let v = VectorField::planar(p("x^3"), p("y")).unwrap();
        assert!(matches!(
            verify_degree_structure(&p("x"), &v),
            Err(InvarianceError::Shape(_))
        ));
    }
}
