//! Certified error bounds for unitary representations of Lie groups.
//!
//! The bounds have the form ‖(U_g − U_h)ψ‖ ≤ √⟨ψ,Δψ⟩ · d(g,h), where Δ is
//! the Nelson Laplacian of the representation and d the left-invariant
//! metric induced by an inner product on the Lie algebra. Every bound
//! can be checked against an exact finite-dimensional oracle.

pub mod bounds;
pub mod error;
pub mod experiments;
pub mod groups;
pub mod linalg;
pub mod metric;
pub mod nelson;
pub mod reps;

pub use error::{Error, Result};
