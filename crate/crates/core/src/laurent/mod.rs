//! Truncated Laurent series at places and local expansions.

pub mod expand;
pub mod residue;
pub mod series;

pub use expand::{dx_dt, expand, expand_differential, local_coordinates, LocalCoordinates};
pub use residue::{local_residue, residue};
pub use series::{LaurentSeries, EXACT};
