use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError, Rat};

/// Shared, ordered list of variable names.
pub type Vars = Arc<[String]>;

/// Sparse polynomial: an ordered variable list and a map from exponent
/// vectors to nonzero rational coefficients, keyed in graded-lex order.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rat>,
}

pub fn make_vars<S: AsRef<str>>(names: &[S]) -> Vars {
    Arc::from(
        names
            .iter()
            .map(|s| s.as_ref().to_string())
            .collect::<Vec<_>>(),
    )
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut p = MPoly::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: &Vars) -> Self {
        MPoly::constant(vars, Rat::one())
    }

    /// The polynomial consisting of the variable `name`.
    pub fn var(vars: &Vars, name: &str) -> Result<Self, PolyError> {
        let i = index_of(vars, name)?;
        Ok(MPoly::var_at(vars, i))
    }

    pub fn var_at(vars: &Vars, index: usize) -> Self {
        MPoly::monomial(vars, Monomial::var(vars.len(), index, 1), Rat::one())
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Rat) -> Self {
        assert_eq!(m.nvars(), vars.len(), "monomial arity");
        let mut p = MPoly::zero(vars);
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from possibly repeated terms; like terms merge.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(vars: &Vars, terms: I) -> Self {
        let mut p = MPoly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        index_of(&self.vars, name)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree())
    }

    /// Highest exponent of the variable at `index`.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(index)).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term()
            .map_or_else(Rat::zero, |(_, c)| c.clone())
    }

    /// Scales so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of `p` viewed as a polynomial in the variable at
    /// `index`: entry `k` multiplies `var^k`. Entries keep the full variable
    /// list but do not involve that variable.
    pub fn coefficients_in(&self, index: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(&self.vars); self.degree_in(index) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(index) as usize;
            out[k].add_term(m.with_exponent(index, 0), c.clone());
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_vars(&self, other: &MPoly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.vars.join(", "),
                right: other.vars.join(", "),
            })
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.same_vars(other)?;
        let mut out = MPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial(&self, name: &str) -> Result<MPoly, PolyError> {
        Ok(self.partial_at(self.var_index(name)?))
    }

    pub fn partial_at(&self, index: usize) -> MPoly {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derive(index) {
                out.add_term(dm, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Division by a single divisor with remainder. Repeatedly cancels the
    /// leading term of the running dividend when the divisor's leading
    /// monomial divides it, and moves it to the remainder otherwise.
    pub fn div_rem(&self, d: &MPoly) -> Result<(MPoly, MPoly), PolyError> {
        self.same_vars(d)?;
        let (lm, lc) = d.leading_term().ok_or(PolyError::DivisionByZero)?;
        let (lm, lc_inv) = (lm.clone(), lc.recip());
        let mut q = MPoly::zero(&self.vars);
        let mut r = MPoly::zero(&self.vars);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.pop_last() {
            match m.checked_div(&lm) {
                Some(shift) => {
                    let k = &c * &lc_inv;
                    // d's leading term cancels `m` exactly; subtract the rest.
                    for (dm, dc) in d.terms.iter().rev().skip(1) {
                        p.add_term(dm.mul(&shift), -(&k * dc));
                    }
                    q.add_term(shift, k);
                }
                None => r.add_term(m, c),
            }
        }
        Ok((q, r))
    }

    /// Exact quotient `p / d`, or `None` when the remainder is nonzero.
    pub fn div_exact(&self, d: &MPoly) -> Result<Option<MPoly>, PolyError> {
        let (q, r) = self.div_rem(d)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Floating-point evaluation; panics on a dimension mismatch.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars(), "point dimension");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .zip(point)
                    .fold(super::to_f64(c), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Replaces `name` by `r`. The result's variable list is this list with
    /// `name` replaced, in place, by whichever of `r`'s variables are not
    /// already present.
    pub fn substitute(&self, name: &str, r: &MPoly) -> Result<MPoly, PolyError> {
        let idx = self.var_index(name)?;
        let mut names: Vec<String> = Vec::new();
        for (i, v) in self.vars.iter().enumerate() {
            if i == idx {
                for rv in r.vars.iter() {
                    let taken = self
                        .vars
                        .iter()
                        .enumerate()
                        .any(|(j, w)| j != idx && w == rv);
                    if !taken && !names.contains(rv) {
                        names.push(rv.clone());
                    }
                }
            } else {
                names.push(v.clone());
            }
        }
        let out_vars: Vars = Arc::from(names);
        let r = r.embed(&out_vars)?;
        let me = self.clone().drop_variable(idx, &out_vars);
        let mut powers = vec![MPoly::one(&out_vars)];
        let mut out = MPoly::zero(&out_vars);
        for (m, c) in &me {
            let e = m.0 as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * &r;
                powers.push(next);
            }
            out = &out + &powers[e].mul_term(&m.1, c);
        }
        Ok(out)
    }

    // Splits each term into (exponent of `idx`, monomial over `out_vars`).
    fn drop_variable(self, idx: usize, out_vars: &Vars) -> Vec<((u32, Monomial), Rat)> {
        let positions: Vec<usize> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| out_vars.iter().position(|w| w == v).unwrap())
            .collect();
        self.terms
            .into_iter()
            .map(|(m, c)| {
                let mut e = vec![0; out_vars.len()];
                let mut k = 0;
                for (i, &x) in m.exponents().iter().enumerate() {
                    if i != idx {
                        e[positions[k]] += x;
                        k += 1;
                    }
                }
                ((m.exponent(idx), Monomial::new(e)), c)
            })
            .collect()
    }

    /// Re-expresses over another variable list that contains every variable
    /// this polynomial actually uses.
    pub fn embed(&self, target: &Vars) -> Result<MPoly, PolyError> {
        if self.vars == *target {
            return Ok(MPoly {
                vars: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            let pos = target.iter().position(|w| w == v);
            if pos.is_none() && self.degree_in(i) > 0 {
                return Err(PolyError::UnknownVariable(v.clone()));
            }
            map.push(pos);
        }
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] += x;
                }
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Gradient-free change of coefficients, e.g. for numeric views.
    pub fn coefficients(&self) -> impl Iterator<Item = &Rat> {
        self.terms.values()
    }
}

fn index_of(vars: &Vars, name: &str) -> Result<usize, PolyError> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
}

// Operator sugar. Mixing variable lists through operators is a programming
// error, so these panic where the checked_* forms return an error.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    /// Canonical form: graded-lex descending, explicit `*`, `^` for powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !a.is_one() {
                factors.push(a.to_string());
            }
            for (name, &e) in self.vars.iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.vars.join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::strategies::{point, poly, vars};
    use crate::ratpoly::{int, rat};
    use proptest::prelude::*;

    fn xy() -> (Vars, MPoly, MPoly) {
        let v = vars(&["x", "y"]);
        let x = MPoly::var(&v, "x").unwrap();
        let y = MPoly::var(&v, "y").unwrap();
        (v, x, y)
    }

    fn c(v: &Vars, n: i64) -> MPoly {
        MPoly::constant(v, int(n))
    }

    #[test]
    fn add_examples() {
        let (v, x, y) = xy();
        assert_eq!(&(&x + &y) + &(&x - &y), x.scale(&int(2)));
        assert_eq!(&x + &MPoly::zero(&v), x);
        let a = &x.pow(2) + &c(&v, 1);
        let b = &x.pow(2).scale(&int(2)) + &c(&v, 3);
        assert_eq!(&a + &b, &x.pow(2).scale(&int(3)) + &c(&v, 4));
    }

    #[test]
    fn mismatched_variables_error() {
        let (_, x, _) = xy();
        let other = MPoly::var(&vars(&["y", "x"]), "x").unwrap();
        assert!(matches!(
            x.checked_add(&other),
            Err(PolyError::VariableMismatch { .. })
        ));
        assert!(x.checked_mul(&other).is_err());
    }

    #[test]
    fn mul_examples() {
        let (v, x, y) = xy();
        let one = c(&v, 1);
        assert_eq!(&(&x - &one) * &(&x + &one), &x.pow(2) - &one);
        assert!((&x * &MPoly::zero(&v)).is_zero());
        let d = &y - &x;
        assert_eq!(
            &d.pow(2) * &one,
            &(&y.pow(2) - &(&x * &y).scale(&int(2))) + &x.pow(2)
        );
    }

    #[test]
    fn partial_examples() {
        let (v, x, y) = xy();
        assert_eq!(
            (&x.pow(2) * &y).partial("x").unwrap(),
            (&x * &y).scale(&int(2))
        );
        assert!(c(&v, 7).partial("y").unwrap().is_zero());
        let g = &(&y - &x).pow(2) - &x.scale(&int(2));
        let expect = &(&y - &x).scale(&int(-2)) - &c(&v, 2);
        assert_eq!(g.partial("x").unwrap(), expect);
        assert_eq!(
            x.partial("z"),
            Err(PolyError::UnknownVariable("z".into()))
        );
    }

    #[test]
    fn div_exact_examples() {
        let (v, x, _) = xy();
        let one = c(&v, 1);
        let p = &x.pow(2) - &one;
        assert_eq!(p.div_exact(&(&x - &one)).unwrap(), Some(&x + &one));
        let p = &x.pow(2) + &one;
        assert_eq!(p.div_exact(&(&x - &one)).unwrap(), None);
        assert_eq!(p.div_exact(&MPoly::zero(&v)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn div_rem_reconstructs() {
        let (v, x, y) = xy();
        let p = &(&x.pow(3) * &y) + &(&y.pow(2) + &c(&v, 5));
        let d = &(&x * &y) + &c(&v, 1);
        let (q, r) = p.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, p);
        // No remainder term is divisible by LT(d).
        let lm = d.leading_term().unwrap().0.clone();
        assert!(r.terms().all(|(m, _)| !lm.divides(m)));
    }

    #[test]
    fn eval_examples() {
        let (v, x, y) = xy();
        let circle = &(&x.pow(2) + &y.pow(2)) - &c(&v, 1);
        assert_eq!(circle.eval(&[int(1), int(0)]).unwrap(), int(0));
        assert_eq!(MPoly::zero(&v).eval(&[rat(3, 7), int(2)]).unwrap(), int(0));
        assert!(matches!(
            circle.eval(&[int(1)]),
            Err(PolyError::DimensionMismatch { expected: 2, got: 1 })
        ));
        assert_eq!(circle.eval_f64(&[0.5, 0.5]), -0.5);
    }

    #[test]
    fn substitute_examples() {
        let (_, x, y) = xy();
        let big = vars(&["X"]);
        let bx = MPoly::var(&big, "X").unwrap();
        let p = &x.pow(2) + &y;
        let s = p.substitute("x", &bx.pow(2)).unwrap();
        assert_eq!(&s.vars()[..], &["X".to_string(), "y".to_string()]);
        let expect_vars = s.vars().clone();
        let sx = MPoly::var(&expect_vars, "X").unwrap();
        let sy = MPoly::var(&expect_vars, "y").unwrap();
        assert_eq!(s, &sx.pow(4) + &sy);
        assert_eq!(p.substitute("x", &x).unwrap(), p);
        assert!(p.substitute("q", &x).is_err());
    }

    #[test]
    fn coefficients_in_y() {
        let (v, x, y) = xy();
        let p = &(&(&x * &y.pow(2)) + &y.scale(&int(3))) + &x.pow(2);
        let cs = p.coefficients_in(1);
        assert_eq!(cs, vec![x.pow(2), c(&v, 3), x.clone()]);
    }

    #[test]
    fn printer_format() {
        let (v, x, y) = xy();
        let p = &(&x.pow(2).scale(&int(-1)) + &y.scale(&rat(1, 3))) - &c(&v, 2);
        assert_eq!(p.to_string(), "-x^2 + 1/3*y - 2");
        assert_eq!((&x * &y).scale(&int(-4)).to_string(), "-4*x*y");
        assert_eq!(MPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn monic_and_homogeneous() {
        let (v, x, y) = xy();
        let p = &(&x.pow(2).scale(&int(3)) + &y) + &c(&v, 6);
        assert_eq!(p.monic().leading_coeff(), int(1));
        assert_eq!(p.homogeneous_part(2), x.pow(2).scale(&int(3)));
        assert_eq!(p.degree(), 2);
        assert_eq!(MPoly::zero(&v).degree(), 0);
    }

    const XYZ: &[&str] = &["x", "y", "z"];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ring_axioms(a in poly(XYZ, 3), b in poly(XYZ, 3), c in poly(XYZ, 3)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn leibniz(a in poly(XYZ, 3), b in poly(XYZ, 3)) {
            for i in 0..3 {
                let lhs = (&a * &b).partial_at(i);
                let rhs = &(&a.partial_at(i) * &b) + &(&a * &b.partial_at(i));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn div_round_trip(q in poly(XYZ, 3), d in poly(XYZ, 3)) {
            prop_assume!(!d.is_zero());
            let p = &q * &d;
            prop_assert_eq!(p.div_exact(&d).unwrap(), Some(q));
        }

        #[test]
        fn div_rem_identity(p in poly(XYZ, 4), d in poly(XYZ, 2)) {
            prop_assume!(!d.is_zero());
            let (q, r) = p.div_rem(&d).unwrap();
            prop_assert_eq!(&(&q * &d) + &r, p);
        }

        #[test]
        fn degree_additive(a in poly(XYZ, 3), b in poly(XYZ, 3)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).degree(), a.degree() + b.degree());
        }

        #[test]
        fn eval_homomorphism(a in poly(XYZ, 3), b in poly(XYZ, 3), pt in point(3)) {
            let prod = (&a * &b).eval(&pt).unwrap();
            prop_assert_eq!(prod, a.eval(&pt).unwrap() * b.eval(&pt).unwrap());
            let sum = (&a + &b).eval(&pt).unwrap();
            prop_assert_eq!(sum, a.eval(&pt).unwrap() + b.eval(&pt).unwrap());
        }

        #[test]
        fn substitute_matches_eval(a in poly(XYZ, 3), r in poly(XYZ, 2), pt in point(3)) {
            let s = a.substitute("y", &r).unwrap();
            let mut inner = pt.clone();
            inner[1] = r.eval(&pt).unwrap();
            prop_assert_eq!(s.eval(&pt).unwrap(), a.eval(&inner).unwrap());
        }
    }
}
