//! Construction and verification of the bi-graded fusion ring attached to the
//! graph pair `(Γ_k, Γ′_k)`, `k = 0, 1, 2, …`.
//!
//! Two independent routes produce the structure constants:
//!
//!  - [`model`] realizes every simple object as a real matrix over a small
//!    commutative-plus-`M₂` algebra with a faithful trace, and reads the
//!    fusion coefficients off as trace inner products `⟨XY, Z⟩`.
//!  - [`closed_form`] evaluates the explicit integer formulas for the
//!    products among `β₃, γ₃` and `f, g` in exact arithmetic.
//!
//! [`fusion`] holds the table type and the axiom verifiers (Frobenius
//! reciprocity, associativity, units, conjugation, dimension) and the
//! cross-check between the two routes.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod closed_form;
mod error;
pub mod fusion;
pub mod graphs;
pub mod label;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod polynomials;
pub mod tolerance;

pub use error::Error;
pub use fusion::{BasisElement, FusionTable};
pub use label::{Grade, Side, Simple};
pub use poly::IntPoly;

/// Length `n = 4k + 3` of the long chain `α₀ – α₁ – … – α_n` in `Γ_k`.
pub const fn chain_len(k: usize) -> usize {
    4 * k + 3
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
