use crate::brackets::{directional, VectorField};
use crate::ratpoly::MPoly;

use super::InvarianceError;

/// Members `f_0..f_{k-1}` with cofactors `L_0..L_{k-1}` of a generalized
/// invariant curve: `X(f_i) = sum_{j<=i} f_{i-j} L_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    pub members: Vec<MPoly>,
    pub cofactors: Vec<MPoly>,
}

/// One residual per member; the chain holds iff all are zero.
pub fn check_chain(spec: &ChainSpec, v: &VectorField) -> Result<Vec<MPoly>, InvarianceError> {
    let (f, l) = (&spec.members, &spec.cofactors);
    if f.len() != l.len() {
        return Err(InvarianceError::LengthMismatch {
            members: f.len(),
            cofactors: l.len(),
        });
    }
    if f.is_empty() {
        return Err(InvarianceError::EmptyChain);
    }
    if f[0].is_zero() {
        return Err(InvarianceError::ZeroCurve);
    }
    let mut out = Vec::with_capacity(f.len());
    for i in 0..f.len() {
        let mut r = directional(&f[i], v)?;
        for j in 0..=i {
            r = &r - &(&f[i - j] * &l[j]);
        }
        out.push(r);
    }
    Ok(out)
}
