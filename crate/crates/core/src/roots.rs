//! Floating-point univariate root finding: companion-matrix eigenvalues
//! followed by Newton polishing.

use nalgebra::{Complex, DMatrix};

pub type C64 = Complex<f64>;

fn trim(coeffs: &[f64]) -> &[f64] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1] == 0.0 {
        n -= 1;
    }
    &coeffs[..n]
}

pub fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn derivative(coeffs: &[C64]) -> Vec<C64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

/// All complex roots (with multiplicity) of `sum coeffs[k] t^k`, by
/// Aberth-Ehrlich simultaneous iteration. Returns an empty list for constant
/// or zero input.
pub fn complex_roots(coeffs: &[f64]) -> Vec<C64> {
    let c = trim(coeffs);
    if c.len() <= 1 {
        return Vec::new();
    }
    let zeros = c.iter().take_while(|&&v| v == 0.0).count();
    let c = &c[zeros..];
    let deg = c.len() - 1;
    let mut out = vec![C64::new(0.0, 0.0); zeros];
    if deg == 0 {
        return out;
    }
    let cc: Vec<C64> = c.iter().map(|&v| C64::new(v / c[deg], 0.0)).collect();
    let dc = derivative(&cc);
    let radius = (cc[0].norm()).powf(1.0 / deg as f64).max(1e-3);
    let mut z: Vec<C64> = (0..deg)
        .map(|k| C64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for k in 0..deg {
            let p = horner(&cc, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / horner(&dc, z[k]);
            let repulsion: C64 = (0..deg)
                .filter(|&j| j != k)
                .map(|j| C64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    out.extend(z.into_iter().map(|z0| polish(&cc, &dc, z0)));
    out
}

/// Eigenvalues of a real square matrix via the real Schur form. Stalled
/// QR iterations are retried after an orthogonal change of basis.
pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<C64> {
    use nalgebra::linalg::Schur;
    let n = m.nrows();
    if n == 0 {
        return Vec::new();
    }
    if let Some(s) = Schur::try_new(m.clone(), f64::EPSILON, 20_000) {
        return s.complex_eigenvalues().iter().copied().collect();
    }
    for seed in 1..=5u64 {
        let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let r = DMatrix::<f64>::from_fn(n, n, |_, _| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        });
        let q = r.qr().q();
        let rotated = q.transpose() * m * &q;
        if let Some(s) = Schur::try_new(rotated, f64::EPSILON, 20_000) {
            return s.complex_eigenvalues().iter().copied().collect();
        }
    }
    Vec::new()
}

fn polish(c: &[C64], dc: &[C64], z0: C64) -> C64 {
    let mut z = z0;
    let mut best = horner(c, z).norm();
    for _ in 0..50 {
        let d = horner(dc, z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - horner(c, z) / d;
        let val = horner(c, next).norm();
        if !(val < best) {
            break;
        }
        z = next;
        best = val;
        if best == 0.0 {
            break;
        }
    }
    z
}

/// Real roots (imaginary part below `imag_tol` relative to `1 + |t|`),
/// sorted ascending, with near-duplicates merged.
pub fn real_roots(coeffs: &[f64], imag_tol: f64) -> Vec<f64> {
    let mut out: Vec<f64> = complex_roots(coeffs)
        .into_iter()
        .filter(|z| z.im.abs() <= imag_tol * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    out.sort_by(|a, b| a.total_cmp(b));
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + a.abs()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        // t^2 - 3t + 2
        let r = real_roots(&[2.0, -3.0, 1.0], 1e-9);
        assert_eq!(r.len(), 2);
        assert!((r[0] - 1.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn complex_pair() {
        let r = complex_roots(&[1.0, 0.0, 1.0]);
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|z| (z.im.abs() - 1.0).abs() < 1e-12 && z.re.abs() < 1e-12));
        assert!(real_roots(&[1.0, 0.0, 1.0], 1e-9).is_empty());
    }

    #[test]
    fn zero_roots_and_degenerate_input() {
        let r = real_roots(&[0.0, 0.0, -1.0, 1.0], 1e-9);
        assert_eq!(r, vec![0.0, 1.0]);
        assert!(complex_roots(&[3.0]).is_empty());
        assert!(complex_roots(&[0.0, 0.0]).is_empty());
    }

    #[test]
    fn golden_ratio_quartic() {
        // (t^2 - t - 1)(t^2 + t - 1)
        let r = real_roots(&[1.0, 0.0, -3.0, 0.0, 1.0], 1e-9);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let want = [-phi, -1.0 / phi, 1.0 / phi, phi];
        assert_eq!(r.len(), 4);
        for (a, b) in r.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
