use crate::brackets::{directional, VectorField};
use crate::ratpoly::MPoly;

use super::InvarianceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Invariant,
    NotInvariant,
}

/// Result of dividing `dg(v)` by `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub curve: MPoly,
    pub cofactor: Option<MPoly>,
    pub remainder: MPoly,
    pub verdict: Verdict,
}

impl InvariantReport {
    pub fn is_invariant(&self) -> bool {
        self.verdict == Verdict::Invariant
    }
}

/// Computes `dg(v)` and divides it by `g`. The curve is invariant exactly when
/// the remainder vanishes, in which case the quotient is the cofactor.
pub fn cofactor(g: &MPoly, v: &VectorField) -> Result<InvariantReport, InvarianceError> {
    if g.is_zero() {
        return Err(InvarianceError::ZeroCurve);
    }
    let dg = directional(g, v)?;
    let (q, r) = dg.div_rem(g)?;
    let verdict = if r.is_zero() {
        Verdict::Invariant
    } else {
        Verdict::NotInvariant
    };
    Ok(InvariantReport {
        curve: g.clone(),
        cofactor: r.is_zero().then_some(q),
        remainder: r,
        verdict,
    })
}
