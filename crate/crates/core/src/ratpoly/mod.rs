//! Exact sparse multivariate polynomials over arbitrary-precision rationals.

mod monomial;
mod poly;

pub use monomial::{monomials_of_degree, monomials_up_to, Monomial};
pub use poly::{make_vars, MPoly, Vars};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational; `num_rational` keeps it reduced with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("expected a point with {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a ratio of rounded halves for out-of-range parts.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `n` or `n/d` with optional leading sign.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let r = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Rat::new(n, d)
        }
        None => Rat::from_integer(body.parse().ok()?),
    };
    Some(if neg { -r } else { r })
}

/// Smallest-denominator rational within `tol` of `x`, by continued fractions.
pub fn rationalize(x: f64, tol: f64, max_den: i64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= tol {
            return Some(Rat::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = v - a;
        if frac.abs() < 1e-300 {
            break;
        }
        v = 1.0 / frac;
    }
    None
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rat("3"), Some(int(3)));
        assert_eq!(parse_rat("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(0.4, 1e-12, 1000), Some(rat(2, 5)));
        assert_eq!(rationalize(-81.0 / 2.0, 1e-12, 1000), Some(rat(-81, 2)));
        assert_eq!(rationalize(std::f64::consts::PI, 1e-14, 1000), None);
    }
}
