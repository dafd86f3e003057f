use super::TopoError;

fn check(n: u64) -> Result<u128, TopoError> {
    if n < 1 {
        Err(TopoError::DegreeTooSmall(n))
    } else {
        Ok(n as u128)
    }
}

/// Maximum number of ovals of a nonsingular real plane curve of degree `n`:
/// genus plus one.
pub fn harnack_bound(n: u64) -> Result<u128, TopoError> {
    let n = check(n)?;
    Ok((n - 1) * (n.saturating_sub(2)) / 2 + 1)
}

/// Lower and upper bounds on the maximal degree of an irreducible invariant
/// curve of a degree-`n` field.
pub fn poincare_bounds(n: u64) -> Result<(u128, u128), TopoError> {
    let n = check(n)?;
    Ok((n + 1, 2 * n * (n + 1)))
}

/// Upper bound on algebraic limit cycles of a degree-`n` field.
pub fn limit_cycle_bound(n: u64) -> Result<u128, TopoError> {
    let n = check(n)?;
    Ok((2 * n * n + 2 * n - 1) * (n * n + n - 1) + 1)
}

/// `(lower, upper)` for algebraic limit cycles.
pub fn limit_cycle_bounds(n: u64) -> Result<(u128, u128), TopoError> {
    Ok((harnack_bound(n)?, limit_cycle_bound(n)?))
}

/// Known lower bound and conjectured upper bound on the number of invariant
/// straight lines. For `n = 1` the two formulas are inconsistent (4 > 2); they
/// are returned as stated.
pub fn line_count_bounds(n: u64) -> Result<(u128, u128), TopoError> {
    let n = check(n)?;
    let lower = if n % 2 == 0 { 2 * n + 1 } else { 2 * n + 2 };
    Ok((lower, 3 * n - 1))
}
