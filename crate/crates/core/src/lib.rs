//! Schubert polynomials as sums over lattice points of Minkowski sums of
//! Gelfand-Tsetlin polytopes, and the flow-polytope view of those polytopes.

pub mod combinatorics;
pub mod error;
pub mod flow;
pub mod gt;
pub mod minkowski;
pub mod poly;
pub mod triangle;

pub use error::{Error, Result};
