use num_traits::{One, Zero};

use super::TopoError;
use crate::ratpoly::{int, Rat};

/// Trace and determinant of the linearization of the two-nest field at
/// `(0,0)` (equal to those at `(a,0)`) and at `(a/2,0)`, in closed form.
///
/// With `A = Π(a² − r²)`, `R = Π r²` and `h_j = (a/2)² − r_j²`:
///
/// - `σ₀ = (−1)^l a R`, `Δ₀ = a² A (A − (−1)^l R)`
/// - `σ½ = a Π h_j`, `Δ½ = −(a⁴/2) Π h_j · Σ_k Π_{j≠k} h_j`
pub fn liapunov_two_nests(
    l: usize,
    a: &Rat,
    radii: &[Rat],
) -> Result<((Rat, Rat), (Rat, Rat)), TopoError> {
    if l == 0 {
        return Err(TopoError::EmptyNest);
    }
    if l != radii.len() {
        return Err(TopoError::NestMismatch {
            l,
            radii: radii.len(),
        });
    }
    let a2 = a * a;
    let sq: Vec<Rat> = radii.iter().map(|r| r * r).collect();
    let big_a: Rat = sq.iter().map(|s| &a2 - s).product();
    let big_r: Rat = sq.iter().cloned().product();
    let sign = if l.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
    let sigma0 = &sign * a * &big_r;
    let delta0 = &a2 * &big_a * (&big_a - &sign * &big_r);
    let quarter = &a2 / int(4);
    let h: Vec<Rat> = sq.iter().map(|s| &quarter - s).collect();
    let prod_h: Rat = h.iter().cloned().product();
    let sym: Rat = (0..l)
        .map(|k| {
            h.iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, v)| v.clone())
                .product::<Rat>()
        })
        .fold(Rat::zero(), |acc, t| acc + t);
    let sigma_half = a * &prod_h;
    let delta_half = -(&a2 * &a2 / int(2)) * &prod_h * sym;
    Ok(((sigma0, delta0), (sigma_half, delta_half)))
}
