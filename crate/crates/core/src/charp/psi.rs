//! The maps `f`, `h` and the quasi-isomorphism `psi` built from a family of Frobenius lifts.
//!
//! With `F~*(a) = a^p + p u_a` at each component, dividing by `p` gives
//! `f(da)_(gen or x) = a^{p-1} da + d u_a` and `h(da)_(gen,x) = u_a(gen) - u_a(x)`. Both are
//! extended `O_X'`-linearly from `dx` with Frobenius-twisted coefficients `g -> g^p`.

use std::collections::BTreeMap;

use super::lift::{Coordinate, LiftFamily};
use crate::adele::{Adele0, Adele1, Ctx, Form, MixedAdele};
use crate::curve::FunctionFieldElement;
use crate::derham::{frobenius, RationalDifferential};
use crate::error::{Error, Result};
use crate::laurent::{expand, expand_differential};

/// `u_a` at every component: generic value, the generic value at unlifted points, and the
/// place-lift series elsewhere.
pub fn compute_u(family: &LiftFamily, coord: Coordinate) -> Result<Adele0> {
    if coord == Coordinate::Y && !family.lifted().curve().is_hyperelliptic() {
        return Err(Error::InvalidCurve("no y-coordinate on the projective line".into()));
    }
    let g = family.generic.u(coord).clone();
    let mut out = Adele0::diagonal(Form::Function, &g);
    for lift in family.places.values() {
        out = out.with_exception(lift.u(coord).clone());
    }
    Ok(out)
}

/// `f(dx')` in `A^{1,0}` and `h(dx')` in `A^{0,1}`.
pub fn maps_f_h(ctx: &Ctx, family: &LiftFamily) -> Result<(Adele0, Adele1)> {
    let curve = ctx.curve();
    let p = curve.characteristic() as i64;
    let x = FunctionFieldElement::x(curve);
    let canonical = x.pow(p - 1)?;
    let generic = canonical.add(&family.generic.u_x.derivative());
    let mut f = Adele0::diagonal(Form::Differential, &generic);
    let mut h = Adele1::zero(curve, Form::Function);
    for lift in family.places.values() {
        let place = &lift.place;
        let n = ctx.precision();
        f = f.with_exception(expand_differential(&canonical, place, n)?.add(&lift.u_x.derivative()));
        h = h.with_exception(expand(&family.generic.u_x, place, n)?.sub(&lift.u_x));
    }
    Ok((f, h))
}

/// `F*(g)`: the degree-0 adele with `g^p` at every component.
pub fn frobenius_pullback(ctx: &Ctx, g: &FunctionFieldElement) -> Result<MixedAdele> {
    Ok(MixedAdele::zero(ctx).with_00(Adele0::diagonal(Form::Function, &frobenius(g)?)))
}

/// `psi^0 = F*`.
pub fn psi0(ctx: &Ctx, a: &FunctionFieldElement) -> Result<MixedAdele> {
    frobenius_pullback(ctx, a)
}

/// `psi^1(dx') = f(dx') + h(dx')`.
pub fn psi_dx(ctx: &Ctx, family: &LiftFamily) -> Result<MixedAdele> {
    let (f, h) = maps_f_h(ctx, family)?;
    Ok(MixedAdele::zero(ctx).with_10(f).with_01(h))
}

/// `psi^1(g dx') = F*(g) psi^1(dx')`; checks `D psi = 0` before returning.
pub fn psi(ctx: &Ctx, family: &LiftFamily, omega: &RationalDifferential) -> Result<MixedAdele> {
    let out = frobenius_pullback(ctx, omega.coefficient())?.cup(&psi_dx(ctx, family)?)?;
    if !out.is_cocycle()? {
        return Err(Error::NotCocycle(format!("psi({omega})")));
    }
    Ok(out)
}

/// Components of `D psi(dx')` on each materialized chain `(gen, x)`; the entry `None` is the
/// rational default shared by all other chains.
pub fn lemma_defects(ctx: &Ctx, family: &LiftFamily) -> Result<BTreeMap<Option<String>, bool>> {
    let d = psi_dx(ctx, family)?.d()?;
    let mut out = BTreeMap::new();
    out.insert(None, d.a11.chain_default.is_zero() && d.a00.is_zero() && d.a10.is_zero() && d.a01.is_zero());
    for lift in family.places.values() {
        let c = d.a11.chain_component(ctx, &lift.place)?;
        out.insert(Some(lift.place.id().to_string()), c.is_zero());
    }
    Ok(out)
}

/// `psi(da) - a^{p-1} da - D u_a`; zero by the lifting identity.
pub fn coboundary_defect(ctx: &Ctx, family: &LiftFamily, coord: Coordinate) -> Result<(MixedAdele, Adele0)> {
    let curve = ctx.curve();
    let p = curve.characteristic() as i64;
    let a = coord.function(curve)?;
    let da = RationalDifferential::exact(&a);
    let image = psi(ctx, family, &da)?;
    let canonical = da.mul_function(&a.pow(p - 1)?);
    let diag = MixedAdele::zero(ctx).with_10(Adele0::diagonal(Form::Differential, canonical.coefficient()));
    let u = compute_u(family, coord)?;
    let du = MixedAdele::zero(ctx).with_00(u.clone()).d()?;
    Ok((image.sub(&diag)?.sub(&du)?, u))
}
