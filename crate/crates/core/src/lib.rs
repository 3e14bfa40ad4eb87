//! Quiver coefficients of type A via Schubert and Grothendieck calculus.
//!
//! The crate computes the Zelevinsky permutation of an equioriented type A
//! rank array, Schubert and Grothendieck polynomials, expansions in the
//! (product) Grothendieck bases, and quiver coefficients by several
//! independent routes that can be cross-checked against each other.

pub mod coefficients;
pub mod error;
pub mod perm;
pub mod poly;
pub mod quiver;
pub mod shapes;

pub use error::{Error, Result};
