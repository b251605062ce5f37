use std::sync::Arc;

use super::function_field::FunctionFieldElement;
use super::place::{ratfunc_order, Branch, Center, Place};
use crate::arith::{Poly, Scalar};
use crate::error::{Error, Result};
use crate::laurent::expand::expand;

/// `ord_P(y)` for a hyperelliptic curve.
fn order_of_y(place: &Place) -> i64 {
    match (place.center(), place.branch()) {
        (Center::Infinity, _) => -(place.curve().deg_f() as i64),
        (_, Branch::Ramified) => 1,
        _ => 0,
    }
}

/// `ord_P` of the norm `a^2 - b^2 f` of `g = a + b y`, from an unreduced numerator and
/// denominator; reducing the norm costs polynomial gcds with large rational coefficients.
fn norm_order(g: &FunctionFieldElement, f: &Poly<Scalar>, place: &Place) -> i64 {
    let (a, b) = (g.even(), g.odd());
    let (da, db) = (a.den().mul(a.den()), b.den().mul(b.den()));
    let num = a.num().mul(a.num()).mul(&db).sub(&b.num().mul(b.num()).mul(f).mul(&da));
    let den = da.mul(&db);
    let e = place.ramification_index() as i64;
    match place.center() {
        Center::Finite(pi) => e * (num.valuation_at(pi) as i64 - den.valuation_at(pi) as i64),
        Center::Infinity => e * (den.degree().expect("nonzero") as i64 - num.degree().expect("nonzero norm") as i64),
    }
}

/// `ord_P(g)`, or `None` for `g = 0`.
pub fn order_at(g: &FunctionFieldElement, place: &Arc<Place>) -> Result<Option<i64>> {
    if **g.curve() != **place.curve() {
        return Err(Error::FieldMismatch("element and place live on different curves".into()));
    }
    if g.is_zero() {
        return Ok(None);
    }
    let (a, b) = (g.even(), g.odd());
    if b.is_zero() {
        return Ok(ratfunc_order(a, place));
    }
    let oy = order_of_y(place);
    let ob = ratfunc_order(b, place).map(|v| v + oy);
    if a.is_zero() {
        return Ok(ob);
    }
    let oa = ratfunc_order(a, place);
    let f = g.curve().f().expect("a y-part needs a hyperelliptic curve");
    let on = norm_order(g, f, place);
    if place.fixed_by_involution() {
        return Ok(Some(on / 2));
    }
    // ord(g) + ord(conj g) = ord N(g) and ord(conj g) >= min(ord a, ord b y)
    let bound = on - oa.unwrap().min(ob.unwrap()) + 1;
    let s = expand(g, place, bound)?;
    s.order()
        .map(Some)
        .ok_or_else(|| Error::InsufficientPrecision { needed: bound + 1, known: bound })
}

/// `ord_P(g dx)`.
pub fn order_of_differential(g: &FunctionFieldElement, place: &Arc<Place>) -> Result<Option<i64>> {
    Ok(order_at(g, place)?.map(|v| v + place.order_of_dx()))
}
