//! Exact computation of Poisson trace invariants.
//!
//! The crate computes zeroth Poisson homology of quasi-homogeneous surface
//! singularities by brute-force graded linear algebra, together with the
//! closed-form invariants that it is checked against: Milnor/Jacobi data,
//! symmetric-power generating functions, Kostka polynomials and hypertoric
//! Tutte formulas.

pub mod error;
pub mod exact;
pub mod kostka;
pub mod matroid;
pub mod poisson;
pub mod singularity;
pub mod sympow;

pub use error::{Error, Result};
