//! Construction and exact verification of polynomial vector fields with
//! prescribed invariant algebraic curves.

pub mod ratpoly;

pub use ratpoly::{MPoly, Monomial, PolyError, Rat, Vars};
pub mod brackets;
pub mod builder;
pub mod cli;
pub mod invariance;
pub mod linalg;
pub mod roots;
pub mod topo_bounds;
