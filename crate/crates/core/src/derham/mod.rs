//! Rational differentials, their classification, de Rham reduction and the Cartier operator.

pub mod cartier;
pub mod differential;
pub mod reduce;

pub use cartier::{cartier, cartier_inverse, frobenius};
pub use differential::{default_precision, DifferentialKind, RationalDifferential};
pub use reduce::{canonical_basis, h1dr_dimension, hodge_dimension, reduce_to_basis, DeRhamClass, Reduction};
