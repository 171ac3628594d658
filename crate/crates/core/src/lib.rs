//! Exact finite-group machinery for almost-conjugate subgroups.
//!
//! The crate enumerates small permutation groups, certifies Gassmann pairs
//! `(G; H1, H2)`, builds explicit integral intertwiners
//! `ℚ[G/H1] → ℚ[G/H2]` and the transplantation maps they induce on
//! invariant vectors, and compares Schreier quotients of Cayley graphs by
//! exact characteristic and Ihara zeta polynomials.

pub mod error;
pub mod gassmann;
pub mod group;
pub mod input;
pub mod linalg;
pub mod perm;
pub mod report;
pub mod spectral;
pub mod transplant;

pub use error::Error;
pub use group::{GroupTable, Subgroup};
pub use perm::Permutation;
