//! The bigraded adele complex `A^{p,q}` of a curve.
//!
//! Only "eventually rational" adeles are representable: each family of point or chain
//! components is a rational default together with finitely many Laurent-series exceptions.
//! Every construction in this crate (diagonals, coboundaries, cocycles of second-kind
//! differentials, Frobenius-lift data) lands in that subgroup.
//!
//! Sign conventions: `D' = (-1)^q d` componentwise, `(D''u)_(gen,x) = u_(gen) - u_(x)`, and
//! the cup product carries the Koszul sign `(-1)^{p q'}`, which makes the Leibniz rule hold.

pub mod cocycle;
pub mod context;
pub mod mixed;
pub mod random;
pub mod serialize;
pub mod types;

pub use cocycle::{cocycle_from_second_kind, diagonal_cocycle, try_coboundary_01};
pub use context::{AdeleContext, Ctx, Form};
pub use mixed::MixedAdele;
pub use types::{Adele0, Adele1, Exceptions};

#[cfg(test)]
mod tests;
