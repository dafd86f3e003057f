use std::cmp::Ordering;
use std::fmt;

/// Exponent vector over an ambient variable list.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the first variable, then the second, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial consisting of a single variable raised to `power`.
    pub fn var(nvars: usize, index: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = power;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Lowers the exponent at `index` by one, returning the old exponent.
    pub(crate) fn derive(&self, index: usize) -> Option<(u32, Monomial)> {
        let e = self.0[index];
        if e == 0 {
            return None;
        }
        let mut m = self.0.clone();
        m[index] -= 1;
        Some((e, Monomial(m)))
    }

    pub(crate) fn with_exponent(&self, index: usize, e: u32) -> Monomial {
        let mut m = self.0.clone();
        m[index] = e;
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All exponent vectors in `nvars` variables of total degree `<= max_degree`,
/// in ascending graded-lex order.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        out.extend(monomials_of_degree(nvars, d));
    }
    out.sort();
    out
}

/// All exponent vectors of total degree exactly `degree`.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, remaining: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(remaining);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            rec(prefix, left - 1, remaining - e, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if degree == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
    out.sort();
    out
}
