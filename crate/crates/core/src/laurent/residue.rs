use std::sync::Arc;

use super::expand::expand_differential;
use crate::arith::{ExtElement, Scalar};
use crate::curve::{FunctionFieldElement, Place};
use crate::error::Result;

/// Residue of `g dx` at the place, in the residue field.
pub fn local_residue(g: &FunctionFieldElement, place: &Arc<Place>) -> Result<ExtElement> {
    expand_differential(g, place, 0)?.local_residue()
}

/// Residue of `g dx` at the place, traced down to the base field.
pub fn residue(g: &FunctionFieldElement, place: &Arc<Place>) -> Result<Scalar> {
    Ok(local_residue(g, place)?.trace())
}
