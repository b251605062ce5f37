//! Exact scalar arithmetic: rationals, prime fields, simple extensions,
//! polynomials and their factorization, and length-two Witt vectors.

pub mod ext;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod witt;

pub use ext::{ExtElement, ExtensionField, ResidueField};
pub use field::Field;
pub use poly::Poly;
pub use scalar::{rational, BaseField, PrimeFieldElement, Rational, Scalar};
pub use witt::{WittLength2, WittPoly};
