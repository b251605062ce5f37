//! Frobenius liftings modulo `p^2` on a curve over `F_p`.
//!
//! A lift sends `x~ -> x~^p + p u_x` and `y~ -> y~^p + p u_y`. Since `(a + p b)^p = a^p` mod
//! `p^2`, the lift is determined by the mod-`p` sections `u_x, u_y`, and the lifted curve
//! equation `y~^2 = f~(x~)` holds for the images iff
//!
//! ```text
//! 2 y^p u_y = w + f'(x)^p u_x,      w = (f~(x^p) - f~(x)^p) / p  mod p.
//! ```
//!
//! The generic lift is defined on the function field; place lifts are series at `F_p`-rational
//! places, in the `x`-coordinate where `y` is a unit and in the `y`-coordinate at branch points.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::adele::serialize::{function_json, series_json};
use crate::adele::Ctx;
use crate::arith::{ExtElement, Field, Poly, Scalar, WittLength2, WittPoly};
use crate::curve::{linear_center, order_at, Branch, Curve, FunctionFieldElement, Place, PlaceId};
use crate::derham::frobenius;
use crate::error::{Error, Result};
use crate::laurent::{expand, LaurentSeries};

/// A curve over `F_p` (`p` odd) with the lift `y~^2 = f~(x~)` over `Z/p^2` obtained by lifting
/// each coefficient of `f` to `[0, p)`.
#[derive(Clone, Debug)]
pub struct LiftedCurve {
    curve: Curve,
    p: u64,
    equation: Option<WittPoly>,
    defect: Poly<Scalar>,
}

impl LiftedCurve {
    pub fn new(curve: &Curve) -> Result<Self> {
        let p = curve.characteristic();
        if p == 0 {
            return Err(Error::NotCharacteristicP);
        }
        if p == 2 {
            return Err(Error::UnsupportedCharacteristic(2));
        }
        let base = curve.base();
        let (equation, defect) = match curve.f() {
            None => (None, Poly::zero(&base)),
            Some(f) => {
                let lifted = WittPoly::new(
                    p,
                    f.coeffs()
                        .iter()
                        .map(|c| match c {
                            Scalar::Prime(a) => WittLength2::lift(a),
                            Scalar::Rational(_) => unreachable!("curve over F_p"),
                        })
                        .collect(),
                );
                let diff = lifted.inflate(p as usize).sub(&lifted.pow(p));
                let w = diff
                    .divide_by_p()
                    .ok_or_else(|| Error::CheckFailed("f(x^p) - f(x)^p is not divisible by p".into()))?;
                let w = Poly::new(&base, w.into_iter().map(Scalar::Prime).collect());
                (Some(lifted), w)
            }
        };
        let out = LiftedCurve { curve: curve.clone(), p, equation, defect };
        if !out.reduces_to_base() {
            return Err(Error::CheckFailed("lifted equation does not reduce to the curve".into()));
        }
        Ok(out)
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `f~` over `Z/p^2`; `None` on the projective line.
    pub fn equation(&self) -> Option<&WittPoly> {
        self.equation.as_ref()
    }

    /// `w = (f~(x^p) - f~(x)^p) / p` reduced mod `p`.
    pub fn frobenius_defect(&self) -> &Poly<Scalar> {
        &self.defect
    }

    pub fn reduces_to_base(&self) -> bool {
        match (&self.equation, self.curve.f()) {
            (None, None) => true,
            (Some(e), Some(f)) => {
                let r: Vec<Scalar> = e.reduce().into_iter().map(Scalar::Prime).collect();
                Poly::new(&self.curve.base(), r) == *f
            }
            _ => false,
        }
    }

    fn is_hyperelliptic(&self) -> bool {
        self.equation.is_some()
    }

    fn defect_function(&self) -> FunctionFieldElement {
        FunctionFieldElement::from_poly(&self.curve, self.defect.clone())
    }

    /// `f'(x)^p` as a function.
    fn slope_power(&self) -> FunctionFieldElement {
        let f1 = self.curve.f_derivative().expect("hyperelliptic");
        FunctionFieldElement::from_poly(&self.curve, f1.pow(self.p))
    }

    fn half(&self) -> Scalar {
        self.curve.base().int(2).inv().expect("p odd")
    }
}

/// The affine coordinates whose lifts determine a Frobenius lift.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Coordinate {
    X,
    Y,
}

impl Coordinate {
    pub fn name(self) -> &'static str {
        match self {
            Coordinate::X => "x",
            Coordinate::Y => "y",
        }
    }

    pub fn function(self, curve: &Curve) -> Result<FunctionFieldElement> {
        match self {
            Coordinate::X => Ok(FunctionFieldElement::x(curve)),
            Coordinate::Y => FunctionFieldElement::y(curve),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum LiftScope {
    Generic,
    AtPlace(PlaceId),
}

/// Lift on the function field: `u_x, u_y` rational.
#[derive(Clone, Debug)]
pub struct GenericLift {
    pub u_x: FunctionFieldElement,
    pub u_y: FunctionFieldElement,
}

/// Lift of the complete local ring at a rational place: `u_x, u_y` integral series.
#[derive(Clone, Debug)]
pub struct PlaceLift {
    pub place: Arc<Place>,
    pub u_x: LaurentSeries,
    pub u_y: LaurentSeries,
}

#[derive(Clone, Debug)]
pub enum FrobeniusLift {
    Generic(GenericLift),
    AtPlace(PlaceLift),
}

impl GenericLift {
    /// The canonical lift `x~ -> x~^p`, `y~ -> y~^p (1 + p w / (2 f^p))`.
    pub fn canonical(lifted: &LiftedCurve) -> Result<Self> {
        let curve = lifted.curve();
        let zero = FunctionFieldElement::zero(curve);
        if !lifted.is_hyperelliptic() {
            return Ok(GenericLift { u_x: zero.clone(), u_y: zero });
        }
        let y_p = frobenius(&FunctionFieldElement::y(curve)?)?;
        let u_y = lifted.defect_function().div(&y_p)?.scale(&lifted.half());
        Ok(GenericLift { u_x: zero, u_y })
    }

    pub fn u(&self, coord: Coordinate) -> &FunctionFieldElement {
        match coord {
            Coordinate::X => &self.u_x,
            Coordinate::Y => &self.u_y,
        }
    }

    /// Checks `2 y^p u_y = w + f'(x)^p u_x` exactly.
    pub fn verify(&self, lifted: &LiftedCurve) -> Result<()> {
        if !lifted.is_hyperelliptic() {
            return Ok(());
        }
        let curve = lifted.curve();
        let y_p = frobenius(&FunctionFieldElement::y(curve)?)?;
        let lhs = y_p.mul(&self.u_y).scale(&curve.base().int(2));
        let rhs = lifted.defect_function().add(&lifted.slope_power().mul(&self.u_x));
        if !lhs.sub(&rhs).is_zero() {
            return Err(Error::CheckFailed("generic lift violates the lifted curve equation".into()));
        }
        Ok(())
    }

    /// The `u`-values of local coordinates at a place at infinity; the generic lift restricts
    /// to the local ring there iff all are integral.
    fn u_of_local_coordinates_at_infinity(&self, lifted: &LiftedCurve) -> Result<Vec<FunctionFieldElement>> {
        let curve = lifted.curve();
        let p = lifted.p() as i64;
        let x = FunctionFieldElement::x(curve);
        // u(1/a) = -u(a) / a^{2p}
        let u_s = self.u_x.neg().div(&x.pow(2 * p)?)?;
        if !lifted.is_hyperelliptic() {
            return Ok(vec![u_s]);
        }
        // t = x^m / y: u(t) = m x^{p(m-1)} u_x / y^p - x^{pm} u_y / y^{2p}
        let m = (curve.deg_f() as i64 - 1) / 2;
        let y_p = frobenius(&FunctionFieldElement::y(curve)?)?;
        let first = x.pow(p * (m - 1))?.mul(&self.u_x).div(&y_p)?.scale(&curve.base().int(m));
        let second = x.pow(p * m)?.mul(&self.u_y).div(&y_p.mul(&y_p))?;
        Ok(vec![u_s, first.sub(&second)])
    }
}

fn integral_function(g: &FunctionFieldElement, place: &Arc<Place>) -> Result<bool> {
    Ok(order_at(g, place)?.is_none_or(|v| v >= 0))
}

impl PlaceLift {
    /// Builds the lift at a rational place from a perturbation `delta` of the local coordinate:
    /// `x~ -> x~^p + p delta` where `y` is a unit, `y~ -> y~^p + p delta` at a branch point. The
    /// other image is solved from the lifted curve equation.
    pub fn from_perturbation(lifted: &LiftedCurve, place: &Arc<Place>, delta: LaurentSeries) -> Result<Self> {
        if !place.is_rational() || place.is_infinite() {
            return Err(Error::HenselFailure(format!("place lifts need a finite rational place, got {place}")));
        }
        if !delta.is_integral() {
            return Err(Error::HenselFailure(format!("perturbation at {place} is not integral")));
        }
        let n = delta.precision();
        if !lifted.is_hyperelliptic() {
            let zero = LaurentSeries::zero(place, n);
            return Ok(PlaceLift { place: place.clone(), u_x: delta, u_y: zero });
        }
        let curve = lifted.curve();
        let w = expand(&lifted.defect_function(), place, n)?;
        let slope = expand(&lifted.slope_power(), place, n)?;
        let y_p = expand(&frobenius(&FunctionFieldElement::y(curve)?)?, place, n)?;
        let two = ExtElement::from_i64(place.residue_field(), 2);
        let (u_x, u_y) = if place.branch() == Branch::Ramified {
            if slope.order() != Some(0) {
                return Err(Error::HenselFailure(format!("f'(x) is not a unit at {place}")));
            }
            let u_x = y_p.mul(&delta).scale(&two).sub(&w).div(&slope)?;
            (u_x, delta)
        } else {
            if y_p.order() != Some(0) {
                return Err(Error::HenselFailure(format!("y is not a unit at {place}")));
            }
            let u_y = w.add(&slope.mul(&delta)).div(&y_p.scale(&two))?;
            (delta, u_y)
        };
        let lift = PlaceLift { place: place.clone(), u_x: u_x.truncate(n), u_y: u_y.truncate(n) };
        lift.verify(lifted)?;
        Ok(lift)
    }

    pub fn u(&self, coord: Coordinate) -> &LaurentSeries {
        match coord {
            Coordinate::X => &self.u_x,
            Coordinate::Y => &self.u_y,
        }
    }

    /// Integrality and the lifted curve equation, to the precision of the series.
    pub fn verify(&self, lifted: &LiftedCurve) -> Result<()> {
        if !self.u_x.is_integral() || !self.u_y.is_integral() {
            return Err(Error::HenselFailure(format!("lift at {} is not integral", self.place)));
        }
        if !lifted.is_hyperelliptic() {
            return Ok(());
        }
        let place = &self.place;
        let n = self.u_x.precision().min(self.u_y.precision());
        let curve = lifted.curve();
        let w = expand(&lifted.defect_function(), place, n)?;
        let slope = expand(&lifted.slope_power(), place, n)?;
        let y_p = expand(&frobenius(&FunctionFieldElement::y(curve)?)?, place, n)?;
        let lhs = y_p.mul(&self.u_y).mul_int(2);
        let rhs = w.add(&slope.mul(&self.u_x));
        if !lhs.sub(&rhs).is_zero() {
            return Err(Error::CheckFailed(format!("lift at {place} violates the lifted curve equation")));
        }
        Ok(())
    }
}

impl FrobeniusLift {
    pub fn scope(&self) -> LiftScope {
        match self {
            FrobeniusLift::Generic(_) => LiftScope::Generic,
            FrobeniusLift::AtPlace(l) => LiftScope::AtPlace(l.place.id().clone()),
        }
    }

    pub fn verify(&self, lifted: &LiftedCurve) -> Result<()> {
        match self {
            FrobeniusLift::Generic(l) => l.verify(lifted),
            FrobeniusLift::AtPlace(l) => l.verify(lifted),
        }
    }

    /// Images of the coordinates, as `a^p + p u_a`.
    pub fn to_json(&self, lifted: &LiftedCurve) -> Value {
        let (scope, ux, uy) = match self {
            FrobeniusLift::Generic(l) => ("generic".to_string(), function_json(&l.u_x), function_json(&l.u_y)),
            FrobeniusLift::AtPlace(l) => (l.place.id().to_string(), series_json(&l.u_x), series_json(&l.u_y)),
        };
        if lifted.is_hyperelliptic() {
            json!({ "scope": scope, "image_of_x": { "p_power_plus_p_times": ux }, "image_of_y": { "p_power_plus_p_times": uy } })
        } else {
            json!({ "scope": scope, "image_of_x": { "p_power_plus_p_times": ux } })
        }
    }
}

/// A random integral polynomial `sum_{i<3} c_i t^i` in the uniformizer.
fn random_perturbation<R: Rng>(place: &Arc<Place>, rng: &mut R, precision: i64) -> LaurentSeries {
    let p = place.curve().characteristic() as i64;
    let k = place.residue_field();
    let cs = (0..3).map(|_| ExtElement::from_i64(k, rng.gen_range(0..p))).collect();
    LaurentSeries::new(place, 0, cs, precision)
}

/// Builds the lift at one place from a seed.
pub fn lift_frobenius(ctx: &Ctx, lifted: &LiftedCurve, scope: &LiftScope, choice_seed: u64) -> Result<FrobeniusLift> {
    match scope {
        LiftScope::Generic => {
            let l = GenericLift::canonical(lifted)?;
            l.verify(lifted)?;
            Ok(FrobeniusLift::Generic(l))
        }
        LiftScope::AtPlace(id) => {
            let place = ctx.place(id)?;
            let mut rng = ChaCha8Rng::seed_from_u64(choice_seed);
            let delta = random_perturbation(&place, &mut rng, ctx.precision());
            Ok(FrobeniusLift::AtPlace(PlaceLift::from_perturbation(lifted, &place, delta)?))
        }
    }
}

/// The lifts at every point: the generic lift, plus place lifts at finitely many rational
/// places. Every other point uses the restriction of the generic lift.
#[derive(Clone, Debug)]
pub struct LiftFamily {
    lifted: LiftedCurve,
    seed: u64,
    pub generic: GenericLift,
    pub places: BTreeMap<PlaceId, PlaceLift>,
}

impl LiftFamily {
    /// Places where the generic lift does not restrict to the local ring.
    pub fn mandatory_places(ctx: &Ctx, lifted: &LiftedCurve, generic: &GenericLift) -> Result<Vec<Arc<Place>>> {
        for u in generic.u_of_local_coordinates_at_infinity(lifted)? {
            for place in ctx.registry().infinity() {
                if !integral_function(&u, &place)? {
                    return Err(Error::HenselFailure(format!("generic lift is not integral at {place}")));
                }
            }
        }
        let mut out: BTreeMap<PlaceId, Arc<Place>> = BTreeMap::new();
        for u in [&generic.u_x, &generic.u_y] {
            if u.is_zero() {
                continue;
            }
            for place in ctx.candidate_poles(u)? {
                if place.is_infinite() || integral_function(u, &place)? {
                    continue;
                }
                if !place.is_rational() {
                    return Err(Error::HenselFailure(format!(
                        "generic lift has a pole at the non-rational place {place}"
                    )));
                }
                out.insert(place.id().clone(), place);
            }
        }
        Ok(out.into_values().collect())
    }

    /// The canonical generic lift, seeded lifts at the mandatory places, and `extra` seeded
    /// lifts at further random rational places.
    pub fn generate(ctx: &Ctx, lifted: &LiftedCurve, seed: u64, extra: usize) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let generic = GenericLift::canonical(lifted)?;
        generic.verify(lifted)?;
        let mut places = BTreeMap::new();
        for place in Self::mandatory_places(ctx, lifted, &generic)? {
            let delta = random_perturbation(&place, &mut rng, ctx.precision());
            places.insert(place.id().clone(), PlaceLift::from_perturbation(lifted, &place, delta)?);
        }
        let p = lifted.p() as i64;
        let curve = lifted.curve();
        let mut added = 0;
        for _ in 0..8 * extra {
            if added == extra {
                break;
            }
            let center = linear_center(curve, rng.gen_range(0..p));
            let over: Vec<_> = ctx.registry().places_over(&center)?.into_iter().filter(|q| q.is_rational()).collect();
            if over.is_empty() {
                continue;
            }
            let place = over[rng.gen_range(0..over.len())].clone();
            if places.contains_key(place.id()) {
                continue;
            }
            let delta = random_perturbation(&place, &mut rng, ctx.precision());
            places.insert(place.id().clone(), PlaceLift::from_perturbation(lifted, &place, delta)?);
            added += 1;
        }
        Ok(LiftFamily { lifted: lifted.clone(), seed, generic, places })
    }

    /// Only the generic lift, with unperturbed lifts where it is not integral.
    pub fn canonical(ctx: &Ctx, lifted: &LiftedCurve) -> Result<Self> {
        let generic = GenericLift::canonical(lifted)?;
        let mut places = BTreeMap::new();
        for place in Self::mandatory_places(ctx, lifted, &generic)? {
            let zero = LaurentSeries::zero(&place, ctx.precision());
            places.insert(place.id().clone(), PlaceLift::from_perturbation(lifted, &place, zero)?);
        }
        Ok(LiftFamily { lifted: lifted.clone(), seed: 0, generic, places })
    }

    /// Replaces or adds a place lift.
    pub fn with_place_lift(mut self, lift: PlaceLift) -> Self {
        self.places.insert(lift.place.id().clone(), lift);
        self
    }

    pub fn lifted(&self) -> &LiftedCurve {
        &self.lifted
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn lifts(&self) -> Vec<FrobeniusLift> {
        let mut out = vec![FrobeniusLift::Generic(self.generic.clone())];
        out.extend(self.places.values().cloned().map(FrobeniusLift::AtPlace));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "lifts": self.lifts().iter().map(|l| l.to_json(&self.lifted)).collect::<Vec<_>>(),
        })
    }
}
