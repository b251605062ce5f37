//! Seeded generators of rational functions, series and representable adeles.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use super::context::{Ctx, Form};
use super::mixed::MixedAdele;
use super::types::{Adele0, Adele1};
use crate::arith::factor::is_irreducible;
use crate::arith::{ExtElement, Poly, Scalar};
use crate::curve::{order_at, order_of_differential, Center, Curve, FunctionFieldElement, Place, RatFunc};
use crate::error::Result;
use crate::laurent::LaurentSeries;

type P = Poly<Scalar>;

fn small_scalar<R: Rng>(curve: &Curve, rng: &mut R) -> Scalar {
    curve.base().int(rng.gen_range(-4..=4))
}

fn random_poly<R: Rng>(curve: &Curve, rng: &mut R, max_deg: usize) -> P {
    let deg = rng.gen_range(0..=max_deg);
    P::new(&curve.base(), (0..=deg).map(|_| small_scalar(curve, rng)).collect())
}

/// A monic irreducible of degree 1 or 2 with small coefficients.
pub fn random_center<R: Rng>(curve: &Curve, rng: &mut R) -> P {
    let base = curve.base();
    loop {
        let quadratic = rng.gen_bool(0.3);
        let cs = if quadratic {
            vec![small_scalar(curve, rng), small_scalar(curve, rng), base.one()]
        } else {
            vec![small_scalar(curve, rng), base.one()]
        };
        let p = P::new(&base, cs);
        if is_irreducible(&p).unwrap_or(false) {
            return p;
        }
    }
}

/// A random element of `k(x)` whose denominator is a product of up to two random centers.
pub fn random_ratfunc<R: Rng>(curve: &Curve, rng: &mut R) -> RatFunc {
    let base = curve.base();
    let num = random_poly(curve, rng, 3);
    let mut den = P::one(&base);
    for _ in 0..rng.gen_range(0..=2) {
        den = den.mul(&random_center(curve, rng).pow(rng.gen_range(1..=2)));
    }
    RatFunc::new(num, den).expect("nonzero denominator")
}

/// A random function-field element (with a `y`-part on hyperelliptic curves).
pub fn random_function<R: Rng>(curve: &Curve, rng: &mut R) -> FunctionFieldElement {
    let a = random_ratfunc(curve, rng);
    let b = if curve.is_hyperelliptic() { random_ratfunc(curve, rng) } else { RatFunc::zero(&curve.base()) };
    FunctionFieldElement::new(curve, a, b).expect("same curve")
}

/// A random place over a random center of degree at most 2.
pub fn random_place<R: Rng>(ctx: &Ctx, rng: &mut R) -> Result<Arc<Place>> {
    if rng.gen_bool(0.15) {
        return Ok(ctx.registry().infinity()[0].clone());
    }
    let places = ctx.registry().places_over(&Center::Finite(random_center(ctx.curve(), rng)))?;
    Ok(places[rng.gen_range(0..places.len())].clone())
}

fn random_residue<R: Rng>(place: &Place, rng: &mut R) -> ExtElement {
    let field = place.residue_field();
    let base = field.base();
    ExtElement::from_coeffs(field, (0..field.degree()).map(|_| base.int(rng.gen_range(-4..=4))).collect())
}

/// Random series `sum_{e = start}^{precision - 1} c_e t^e`.
pub fn random_series<R: Rng>(place: &Arc<Place>, rng: &mut R, start: i64, precision: i64) -> LaurentSeries {
    let coeffs = (start..precision).map(|_| random_residue(place, rng)).collect();
    LaurentSeries::new(place, start, coeffs, precision)
}

/// A random degree-0 adele whose point components are all integral.
pub fn random_genuine_adele0<R: Rng>(ctx: &Ctx, form: Form, rng: &mut R) -> Result<Adele0> {
    let curve = ctx.curve();
    let generic = random_function(curve, rng);
    let point_default = random_function(curve, rng);
    let mut exceptions = BTreeMap::new();
    for p in ctx.candidate_poles(&point_default)? {
        let order = match form {
            Form::Function => order_at(&point_default, &p)?,
            Form::Differential => order_of_differential(&point_default, &p)?,
        };
        if order.is_some_and(|v| v < 0) {
            exceptions.insert(p.id().clone(), random_series(&p, rng, 0, ctx.precision()));
        }
    }
    for _ in 0..rng.gen_range(0..=1) {
        let p = random_place(ctx, rng)?;
        exceptions.insert(p.id().clone(), random_series(&p, rng, 0, ctx.precision()));
    }
    Ok(Adele0 { form, generic, point_default, point_exceptions: exceptions })
}

/// A random degree-1 adele with a rational default and a few Laurent-series exceptions.
pub fn random_adele1<R: Rng>(ctx: &Ctx, form: Form, rng: &mut R) -> Result<Adele1> {
    let mut exceptions = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=2) {
        let p = random_place(ctx, rng)?;
        exceptions.insert(p.id().clone(), random_series(&p, rng, -3, ctx.precision()));
    }
    Ok(Adele1 { form, chain_default: random_function(ctx.curve(), rng), exceptions })
}

/// A random genuine mixed adele with all four bidegrees populated.
pub fn random_mixed<R: Rng>(ctx: &Ctx, rng: &mut R) -> Result<MixedAdele> {
    Ok(MixedAdele::zero(ctx)
        .with_00(random_genuine_adele0(ctx, Form::Function, rng)?)
        .with_10(random_genuine_adele0(ctx, Form::Differential, rng)?)
        .with_01(random_adele1(ctx, Form::Function, rng)?)
        .with_11(random_adele1(ctx, Form::Differential, rng)?))
}

/// A random closed `(0,1)`-adele: constant default and constant exceptions.
pub fn random_closed_01<R: Rng>(ctx: &Ctx, rng: &mut R) -> Result<Adele1> {
    let curve = ctx.curve();
    let mut exceptions = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=3) {
        let p = random_place(ctx, rng)?;
        let c = random_residue(&p, rng);
        exceptions.insert(p.id().clone(), LaurentSeries::constant(&p, c, ctx.precision()));
    }
    let c0 = small_scalar(curve, rng);
    Ok(Adele1 { form: Form::Function, chain_default: FunctionFieldElement::constant(curve, c0), exceptions })
}

/// Zero is a legitimate draw for some callers; this helper re-draws until nonzero.
pub fn random_nonzero_function<R: Rng>(curve: &Curve, rng: &mut R) -> FunctionFieldElement {
    loop {
        let g = random_function(curve, rng);
        if !g.is_zero() {
            return g;
        }
    }
}
