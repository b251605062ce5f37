//! Exact computations with adeles on smooth projective curves.
//!
//! The crate models the projective line and hyperelliptic curves
//! `y^2 = f(x)` over `Q` or `F_p`, their places and local expansions,
//! rational differentials and de Rham cohomology, the bigraded adele
//! complex `A^{p,q}` with its residue pairing, and the characteristic-p
//! decomposition built from Frobenius liftings modulo `p^2`.

pub mod arith;
pub mod error;

pub use error::{Error, Result};
pub mod curve;
pub mod laurent;
pub mod derham;
pub mod adele;
pub mod charp;
pub mod report;
