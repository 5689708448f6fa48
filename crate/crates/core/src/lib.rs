//! Exact computer algebra for integral forms of lattice vertex algebras.
//!
//! The crate builds the Fock space `V_L = M(1) ⊗ ℂ{L}` of an even lattice
//! (and its modules `V_{L+γ}`), acts on it with Heisenberg modes, lattice
//! and general vertex-operator modes, divided powers, Garland operators and
//! exponentials, and decides membership in the integral form spanned by
//! products of complete homogeneous functions. Coefficients are exact
//! rationals everywhere.

pub mod error;
pub mod fock;
pub mod harness;
pub mod lattice;
pub mod oracle;
pub mod rational;
pub mod symfunc;
pub mod vertexops;

mod memo;

pub use error::{Error, Result};
