use std::collections::BTreeMap;
use std::sync::Arc;

use super::context::{AdeleContext, Form};
use crate::arith::Scalar;
use crate::curve::{Curve, FunctionFieldElement, Place, PlaceId};
use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;

pub type Exceptions = BTreeMap<PlaceId, LaurentSeries>;

/// Places occurring in either map, each with a handle to the place.
pub(crate) fn union_places(a: &Exceptions, b: &Exceptions) -> Vec<Arc<Place>> {
    let mut out: BTreeMap<PlaceId, Arc<Place>> = BTreeMap::new();
    for s in a.values().chain(b.values()) {
        out.entry(s.place().id().clone()).or_insert_with(|| s.place().clone());
    }
    out.into_values().collect()
}

fn check_form(a: Form, b: Form) -> Result<()> {
    if a != b {
        return Err(Error::FieldMismatch(format!("adding adeles of forms {a:?} and {b:?}")));
    }
    Ok(())
}

/// A degree-0 adele: a generic component at `(gen)` and point components at every `(x)`,
/// given by a rational default plus finitely many series exceptions.
#[derive(Clone, Debug)]
pub struct Adele0 {
    pub form: Form,
    pub generic: FunctionFieldElement,
    pub point_default: FunctionFieldElement,
    pub point_exceptions: Exceptions,
}

/// A degree-1 adele: components at every chain `(gen, x)`, given by a rational default plus
/// finitely many series exceptions.
#[derive(Clone, Debug)]
pub struct Adele1 {
    pub form: Form,
    pub chain_default: FunctionFieldElement,
    pub exceptions: Exceptions,
}

impl Adele0 {
    pub fn zero(curve: &Curve, form: Form) -> Self {
        let z = FunctionFieldElement::zero(curve);
        Adele0 { form, generic: z.clone(), point_default: z, point_exceptions: BTreeMap::new() }
    }

    /// The image of a rational element: the same value at `(gen)` and at every point.
    pub fn diagonal(form: Form, g: &FunctionFieldElement) -> Self {
        Adele0 { form, generic: g.clone(), point_default: g.clone(), point_exceptions: BTreeMap::new() }
    }

    pub fn with_exception(mut self, s: LaurentSeries) -> Self {
        self.point_exceptions.insert(s.place().id().clone(), s);
        self
    }

    pub fn point_component(&self, ctx: &AdeleContext, place: &Arc<Place>) -> Result<LaurentSeries> {
        match self.point_exceptions.get(place.id()) {
            Some(s) => Ok(s.clone()),
            None => ctx.local(self.form, &self.point_default, place),
        }
    }

    pub fn generic_at(&self, ctx: &AdeleContext, place: &Arc<Place>) -> Result<LaurentSeries> {
        ctx.local(self.form, &self.generic, place)
    }

    pub fn add(&self, o: &Self, ctx: &AdeleContext) -> Result<Self> {
        check_form(self.form, o.form)?;
        let mut exc = BTreeMap::new();
        for p in union_places(&self.point_exceptions, &o.point_exceptions) {
            let s = self.point_component(ctx, &p)?.add(&o.point_component(ctx, &p)?);
            exc.insert(p.id().clone(), s);
        }
        Ok(Adele0 {
            form: self.form,
            generic: self.generic.add(&o.generic),
            point_default: self.point_default.add(&o.point_default),
            point_exceptions: exc,
        })
    }

    pub fn neg(&self) -> Self {
        Adele0 {
            form: self.form,
            generic: self.generic.neg(),
            point_default: self.point_default.neg(),
            point_exceptions: self.point_exceptions.iter().map(|(k, s)| (k.clone(), s.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Adele0 {
            form: self.form,
            generic: self.generic.scale(c),
            point_default: self.point_default.scale(c),
            point_exceptions: self.point_exceptions.iter().map(|(k, s)| (k.clone(), s.scale_base(c))).collect(),
        }
    }

    pub fn sub(&self, o: &Self, ctx: &AdeleContext) -> Result<Self> {
        self.add(&o.neg(), ctx)
    }

    /// Zero within precision.
    pub fn is_zero(&self) -> bool {
        self.generic.is_zero()
            && self.point_default.is_zero()
            && self.point_exceptions.values().all(LaurentSeries::is_zero)
    }

    /// Every point component is integral: exceptions have no negative terms, and the default is
    /// regular away from the exceptions.
    pub fn is_genuine(&self, ctx: &AdeleContext) -> Result<bool> {
        if !self.point_exceptions.values().all(LaurentSeries::is_integral) {
            return Ok(false);
        }
        for p in ctx.candidate_poles(&self.point_default)? {
            if self.point_exceptions.contains_key(p.id()) {
                continue;
            }
            if !ctx.local(self.form, &self.point_default, &p)?.is_integral() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Rational elements of the two adeles and their exception places share a curve.
    pub fn curve(&self) -> &Curve {
        self.generic.curve()
    }
}

impl Adele1 {
    pub fn zero(curve: &Curve, form: Form) -> Self {
        Adele1 { form, chain_default: FunctionFieldElement::zero(curve), exceptions: BTreeMap::new() }
    }

    pub fn from_rational(form: Form, g: &FunctionFieldElement) -> Self {
        Adele1 { form, chain_default: g.clone(), exceptions: BTreeMap::new() }
    }

    pub fn with_exception(mut self, s: LaurentSeries) -> Self {
        self.exceptions.insert(s.place().id().clone(), s);
        self
    }

    pub fn chain_component(&self, ctx: &AdeleContext, place: &Arc<Place>) -> Result<LaurentSeries> {
        match self.exceptions.get(place.id()) {
            Some(s) => Ok(s.clone()),
            None => ctx.local(self.form, &self.chain_default, place),
        }
    }

    pub fn add(&self, o: &Self, ctx: &AdeleContext) -> Result<Self> {
        check_form(self.form, o.form)?;
        let mut exc = BTreeMap::new();
        for p in union_places(&self.exceptions, &o.exceptions) {
            let s = self.chain_component(ctx, &p)?.add(&o.chain_component(ctx, &p)?);
            exc.insert(p.id().clone(), s);
        }
        Ok(Adele1 { form: self.form, chain_default: self.chain_default.add(&o.chain_default), exceptions: exc })
    }

    pub fn neg(&self) -> Self {
        Adele1 {
            form: self.form,
            chain_default: self.chain_default.neg(),
            exceptions: self.exceptions.iter().map(|(k, s)| (k.clone(), s.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Adele1 {
            form: self.form,
            chain_default: self.chain_default.scale(c),
            exceptions: self.exceptions.iter().map(|(k, s)| (k.clone(), s.scale_base(c))).collect(),
        }
    }

    pub fn sub(&self, o: &Self, ctx: &AdeleContext) -> Result<Self> {
        self.add(&o.neg(), ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.chain_default.is_zero() && self.exceptions.values().all(LaurentSeries::is_zero)
    }

    pub fn curve(&self) -> &Curve {
        self.chain_default.curve()
    }
}
