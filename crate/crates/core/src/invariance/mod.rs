//! Invariance verification: cofactor extraction, invariant chains, Darboux
//! certificates, invariant-curve search and degree-structure checks.

mod chain;
mod darboux;
mod report;
mod search;
mod structure;

pub use chain::{check_chain, ChainSpec};
pub use darboux::{darboux_search, DarbouxCertificate};
pub use report::{cofactor, InvariantReport, Verdict};
pub use search::{curves_with_cofactor, find_invariant_curve, top_cofactor_candidates};
pub use structure::{verify_degree_structure, DegreeBranch, DegreeReport};

use thiserror::Error;

use crate::brackets::BracketError;
use crate::ratpoly::{MPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvarianceError {
    #[error("the zero polynomial is not a curve")]
    ZeroCurve,
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{members} chain members but {cofactors} cofactors")]
    LengthMismatch { members: usize, cofactors: usize },
    #[error("empty chain")]
    EmptyChain,
    #[error("curve {index} is not invariant; remainder {remainder}")]
    NotInvariant { index: usize, remainder: MPoly },
    #[error("field is not of the required shape: {0}")]
    Shape(String),
}
