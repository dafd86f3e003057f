//! Curves with separated variables and the fields built around them.

use super::BuilderError;
use crate::brackets::VectorField;
use crate::invariance::{cofactor, InvarianceError};
use crate::ratpoly::{int, MPoly, Monomial, Rat};

/// Formal antiderivative in variable `index` with zero constant.
pub fn antiderivative(f: &MPoly, index: usize) -> MPoly {
    let terms = f.terms().map(|(m, c)| {
        let mut e = m.exponents().to_vec();
        e[index] += 1;
        (Monomial::new(e.clone()), c / int(e[index] as i64))
    });
    MPoly::from_terms(f.vars(), terms)
}

fn only_in(f: &MPoly, index: usize, what: &'static str) -> Result<(), BuilderError> {
    let ok = f
        .terms()
        .all(|(m, _)| m.exponents().iter().enumerate().all(|(i, &e)| i == index || e == 0));
    if ok {
        Ok(())
    } else {
        Err(BuilderError::NotUnivariate(what, f.vars()[index].clone()))
    }
}

/// `g = g_0 + ∫ f_1 dx + ∫ f_2 dy`.
pub fn separable_curve(f1: &MPoly, f2: &MPoly, g0: &Rat) -> Result<MPoly, BuilderError> {
    if f1.vars().len() != 2 || f1.vars() != f2.vars() {
        return Err(BuilderError::NotPlanar);
    }
    if f1.is_zero() || f2.is_zero() {
        return Err(BuilderError::ZeroIntegrand);
    }
    only_in(f1, 0, "f1")?;
    only_in(f2, 1, "f2")?;
    let c = MPoly::constant(f1.vars(), g0.clone());
    Ok(&(&c + &antiderivative(f1, 0)) + &antiderivative(f2, 1))
}

/// `P = (Ax + By + C) g_y`, `Q = −(Ax + By + C) g_x + λ g` on the separable
/// curve `g`, whose cofactor is `λ g_y = λ f_2`. Returns the field and `g`.
pub fn build_separable(
    f1: &MPoly,
    f2: &MPoly,
    line: (&Rat, &Rat, &Rat),
    lam: &Rat,
    g0: &Rat,
) -> Result<(VectorField, MPoly), BuilderError> {
    let g = separable_curve(f1, f2, g0)?;
    let vars = g.vars();
    let l = &(&MPoly::var_at(vars, 0).scale(line.0) + &MPoly::var_at(vars, 1).scale(line.1))
        + &MPoly::constant(vars, line.2.clone());
    let p = &l * &g.partial_at(1);
    let q = &(-&(&l * &g.partial_at(0))) + &g.scale(lam);
    let v = VectorField::planar(p, q)?;
    let r = cofactor(&g, &v)?;
    debug_assert_eq!(r.cofactor, Some(f2.scale(lam)));
    Ok((v, g))
}

/// `P = a g_y + p`, `Q = −a g_x + q`. The Hamiltonian part is tangent to the
/// level sets of `g`, so invariance depends on the perturbation `(p, q)`
/// alone; the field is returned with the cofactor of `g`, or an error when
/// the perturbation breaks invariance.
pub fn build_hamiltonian_perturbation(
    g: &MPoly,
    a: &Rat,
    p: &MPoly,
    q: &MPoly,
) -> Result<(VectorField, MPoly), BuilderError> {
    if g.vars().len() != 2 {
        return Err(BuilderError::NotPlanar);
    }
    let v = VectorField::planar(
        &g.partial_at(1).scale(a) + p,
        &(-&g.partial_at(0).scale(a)) + q,
    )?;
    let r = cofactor(g, &v)?;
    match r.cofactor {
        Some(k) => Ok((v, k)),
        None => Err(InvarianceError::NotInvariant {
            index: 0,
            remainder: r.remainder,
        }
        .into()),
    }
}

/// `H = x^{n+1} + G` with `deg G ≤ n − 1` and the degree-`n` field
///
/// `P = (a + bxy) H_y`, `Q = −(a + bxy) H_x + (n+1) b y H`.
///
/// The `x^{n+1}` contributions cancel in `Q`, and `dH(v) = (n+1) b y H_y · H`,
/// so the cofactor is `(n+1) b y G_y`. Returns the field, `H` and the cofactor.
pub fn build_leading_term(
    big_g: &MPoly,
    a: &Rat,
    b: &Rat,
    n: u32,
) -> Result<(VectorField, MPoly, MPoly), BuilderError> {
    let vars = big_g.vars();
    if vars.len() != 2 {
        return Err(BuilderError::NotPlanar);
    }
    if n == 0 || big_g.degree() + 1 > n {
        return Err(BuilderError::DegreeTooHigh {
            got: big_g.degree(),
            max: n.saturating_sub(1),
        });
    }
    let x = MPoly::var_at(vars, 0);
    let y = MPoly::var_at(vars, 1);
    let h = &x.pow(n + 1) + big_g;
    let m = &MPoly::constant(vars, a.clone()) + &(&x * &y).scale(b);
    let byn = y.scale(&(b * int(n as i64 + 1)));
    let p = &m * &h.partial_at(1);
    let q = &(-&(&m * &h.partial_at(0))) + &(&byn * &h);
    let v = VectorField::planar(p, q)?;
    let k = &byn * &h.partial_at(1);
    let r = cofactor(&h, &v)?;
    debug_assert_eq!(r.cofactor.as_ref(), Some(&k));
    Ok((v, h, k))
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;
    use crate::brackets::directional;
    use crate::ratpoly::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn antiderivative_inverts_partial() {
        let f = p("3*x^2*y + 1/2*y - 4");
        assert_eq!(antiderivative(&f, 0).partial_at(0), f);
        assert_eq!(antiderivative(&p("y^2"), 1), p("1/3*y^3"));
    }

    #[test]
    fn separable_cofactor_and_first_integral() {
        let f1 = p("(x - 1)*(x + 2)");
        let f2 = p("y*(y - 3)");
        let (v, g) = build_separable(&f1, &f2, (&int(1), &int(-2), &int(3)), &int(5), &rat(1, 2))
            .unwrap();
        assert_eq!(
            g,
            p("1/2 + 1/3*x^3 + 1/2*x^2 - 2*x + 1/3*y^3 - 3/2*y^2")
        );
        assert_eq!(v.degree(), 3);
        assert_eq!(cofactor(&g, &v).unwrap().cofactor, Some(f2.scale(&int(5))));
        let (v0, g0) =
            build_separable(&f1, &f2, (&int(1), &int(-2), &int(3)), &int(0), &int(0)).unwrap();
        assert!(directional(&g0, &v0).unwrap().is_zero());
    }

    #[test]
    fn separable_validation() {
        assert_eq!(
            build_separable(&p("0"), &p("y"), (&int(1), &int(0), &int(0)), &int(1), &int(0)),
            Err(BuilderError::ZeroIntegrand)
        );
        assert!(matches!(
            separable_curve(&p("x*y"), &p("y"), &int(0)),
            Err(BuilderError::NotUnivariate("f1", _))
        ));
    }

    #[test]
    fn perturbation_must_preserve_invariance() {
        // g = x^4/4 − x^2/2 + y^4/4 − y^2/2 with a radial-type perturbation.
        let g = p("1/4*x^4 - 1/2*x^2 + 1/4*y^4 - 1/2*y^2");
        let (_, k) = build_hamiltonian_perturbation(&g, &int(3), &p("0"), &p("0")).unwrap();
        assert!(k.is_zero());
        let err = build_hamiltonian_perturbation(&g, &int(1), &p("x"), &p("0")).unwrap_err();
        assert!(matches!(
            err,
            BuilderError::Invariance(InvarianceError::NotInvariant { .. })
        ));
    }

    #[test]
    fn leading_term_small_case() {
        let (v, h, k) = build_leading_term(&p("y"), &int(2), &int(5), 2).unwrap();
        assert_eq!(h, p("x^3 + y"));
        assert_eq!(k, p("15*y"));
        assert_eq!(v.degree(), 2);
        assert_eq!(v.components(), &[p("2 + 5*x*y"), p("-6*x^2 + 15*y^2")]);
    }

    #[test]
    fn leading_term_without_b_is_hamiltonian() {
        let (v, h, k) = build_leading_term(&p("x*y + y^2"), &int(3), &int(0), 3).unwrap();
        assert!(k.is_zero());
        assert!(directional(&h, &v).unwrap().is_zero());
    }

    #[test]
    fn leading_term_random_cofactor() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let g = random_poly(&mut rng, &xy(), 2);
            let (v, h, k) = build_leading_term(&g, &int(1), &rat(2, 3), 3).unwrap();
            assert_eq!(v.degree(), 3);
            assert_eq!(k, &p("8/3*y") * &g.partial_at(1));
            assert_eq!(cofactor(&h, &v).unwrap().cofactor, Some(k));
        }
        assert!(matches!(
            build_leading_term(&p("x^3"), &int(1), &int(1), 3),
            Err(BuilderError::DegreeTooHigh { got: 3, max: 2 })
        ));
    }
}
