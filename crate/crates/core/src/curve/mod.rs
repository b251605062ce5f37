//! Curves, their function fields and places.

pub mod function_field;
pub mod model;
pub mod parse;
pub mod place;
pub mod ratfunc;
pub mod valuation;

pub use function_field::FunctionFieldElement;
pub use model::{genus_two_example, legendre_elliptic, Curve, CurveKind, CurveModel, CurveSpec, ModelSpec};
pub use place::{
    linear_center, places_at_infinity, places_over, places_over_factors, Branch, Center, Place, PlaceId,
    PlaceRegistry,
};
pub use parse::parse_function;
pub use ratfunc::RatFunc;
pub use valuation::{order_at, order_of_differential};
