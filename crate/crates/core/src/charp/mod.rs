//! Frobenius liftings modulo `p^2` and the adelic decomposition of the de Rham complex in
//! characteristic `p`.
//!
//! The base field is `F_p` with `p` odd, so `X' = X` and the twist `g -> g^p` realizes the
//! `O_X'`-module structure. Place lifts exist only at `F_p`-rational places.

pub mod lift;
pub mod psi;
pub mod verify;

pub use lift::{lift_frobenius, Coordinate, FrobeniusLift, GenericLift, LiftFamily, LiftScope, LiftedCurve, PlaceLift};
pub use psi::{coboundary_defect, compute_u, frobenius_pullback, lemma_defects, maps_f_h, psi, psi0, psi_dx};
pub use verify::{default_test_forms, di_check, verify_quasi_iso, QuasiIsoReport};
