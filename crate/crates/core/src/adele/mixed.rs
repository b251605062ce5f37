use std::collections::BTreeMap;
use std::sync::Arc;

use super::context::{Ctx, Form};
use super::types::{union_places, Adele0, Adele1};
use crate::arith::Scalar;
use crate::curve::{Curve, FunctionFieldElement};
use crate::error::{Error, Result};
use crate::laurent::expand::expand_differential;
use crate::laurent::LaurentSeries;

/// An element of `A^0 + A^1 + A^2` on a curve, split into bidegrees `(p, q)`:
/// `a00` (functions, points), `a10` (differentials, points), `a01` (functions, chains),
/// `a11` (differentials, chains).
#[derive(Clone, Debug)]
pub struct MixedAdele {
    ctx: Ctx,
    pub a00: Adele0,
    pub a10: Adele0,
    pub a01: Adele1,
    pub a11: Adele1,
}

impl MixedAdele {
    pub fn zero(ctx: &Ctx) -> Self {
        let c = ctx.curve();
        MixedAdele {
            ctx: ctx.clone(),
            a00: Adele0::zero(c, Form::Function),
            a10: Adele0::zero(c, Form::Differential),
            a01: Adele1::zero(c, Form::Function),
            a11: Adele1::zero(c, Form::Differential),
        }
    }

    /// The unit: every component equal to 1.
    pub fn unit(ctx: &Ctx) -> Self {
        Self::zero(ctx).with_00(Adele0::diagonal(Form::Function, &FunctionFieldElement::one(ctx.curve())))
    }

    pub fn with_00(mut self, a: Adele0) -> Self {
        assert_eq!(a.form, Form::Function);
        self.a00 = a;
        self
    }

    pub fn with_10(mut self, a: Adele0) -> Self {
        assert_eq!(a.form, Form::Differential);
        self.a10 = a;
        self
    }

    pub fn with_01(mut self, a: Adele1) -> Self {
        assert_eq!(a.form, Form::Function);
        self.a01 = a;
        self
    }

    pub fn with_11(mut self, a: Adele1) -> Self {
        assert_eq!(a.form, Form::Differential);
        self.a11 = a;
        self
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn curve(&self) -> &Curve {
        self.ctx.curve()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.ctx, &o.ctx) && **self.curve() != **o.curve() {
            return Err(Error::FieldMismatch("adeles on different curves".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let c = &self.ctx;
        Ok(MixedAdele {
            ctx: c.clone(),
            a00: self.a00.add(&o.a00, c)?,
            a10: self.a10.add(&o.a10, c)?,
            a01: self.a01.add(&o.a01, c)?,
            a11: self.a11.add(&o.a11, c)?,
        })
    }

    pub fn neg(&self) -> Self {
        MixedAdele {
            ctx: self.ctx.clone(),
            a00: self.a00.neg(),
            a10: self.a10.neg(),
            a01: self.a01.neg(),
            a11: self.a11.neg(),
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        MixedAdele {
            ctx: self.ctx.clone(),
            a00: self.a00.scale(k),
            a10: self.a10.scale(k),
            a01: self.a01.scale(k),
            a11: self.a11.scale(k),
        }
    }

    /// Zero within the working precision.
    pub fn is_zero(&self) -> bool {
        self.a00.is_zero() && self.a10.is_zero() && self.a01.is_zero() && self.a11.is_zero()
    }

    pub fn agrees_with(&self, o: &Self) -> Result<bool> {
        Ok(self.sub(o)?.is_zero())
    }

    /// The total degrees `p + q` carrying a nonzero component.
    pub fn degrees(&self) -> Vec<u8> {
        let mut d = Vec::new();
        if !self.a00.is_zero() {
            d.push(0);
        }
        if !self.a10.is_zero() || !self.a01.is_zero() {
            d.push(1);
        }
        if !self.a11.is_zero() {
            d.push(2);
        }
        d
    }

    /// `D'`: the exterior derivative on every component, with sign `(-1)^q`.
    pub fn d_prime(&self) -> Self {
        let a = &self.a00;
        let a10 = Adele0 {
            form: Form::Differential,
            generic: a.generic.derivative(),
            point_default: a.point_default.derivative(),
            point_exceptions: a.point_exceptions.iter().map(|(k, s)| (k.clone(), s.derivative())).collect(),
        };
        let b = &self.a01;
        let a11 = Adele1 {
            form: Form::Differential,
            chain_default: b.chain_default.derivative().neg(),
            exceptions: b.exceptions.iter().map(|(k, s)| (k.clone(), s.derivative().neg())).collect(),
        };
        Self::zero(&self.ctx).with_10(a10).with_11(a11)
    }

    /// `D''`: the Cech coboundary `(D''u)_{(gen,x)} = u_(gen) - u_(x)`.
    pub fn d_double_prime(&self) -> Result<Self> {
        let a01 = self.coboundary(&self.a00)?;
        let a11 = self.coboundary(&self.a10)?;
        Ok(Self::zero(&self.ctx).with_01(a01).with_11(a11))
    }

    fn coboundary(&self, u: &Adele0) -> Result<Adele1> {
        let mut exceptions = BTreeMap::new();
        for s in u.point_exceptions.values() {
            let p = s.place();
            exceptions.insert(p.id().clone(), u.generic_at(&self.ctx, p)?.sub(s));
        }
        Ok(Adele1 { form: u.form, chain_default: u.generic.sub(&u.point_default), exceptions })
    }

    /// `D = D' + D''`.
    pub fn d(&self) -> Result<Self> {
        self.d_prime().add(&self.d_double_prime()?)
    }

    pub fn is_cocycle(&self) -> Result<bool> {
        Ok(self.d()?.is_zero())
    }

    /// Cup product with the front/back-face rule and Koszul sign `(-1)^{p q'}`.
    pub fn cup(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let c = &self.ctx;
        let mut out = Self::zero(c);
        // degree-0 chains: pointwise products
        out.a00 = point_product(c, &self.a00, &o.a00)?.expect("functions");
        out.a10 = point_product(c, &self.a00, &o.a10)?
            .expect("function times form")
            .add(&point_product(c, &self.a10, &o.a00)?.expect("form times function"), c)?;
        // chains (gen, x): front face from the left factor's generic component, back face from
        // the right factor's point component
        out.a01 = front(c, &self.a00, &o.a01, false)?
            .expect("functions")
            .add(&back(c, &self.a01, &o.a00)?.expect("functions"), c)?;
        let mut a11 = Adele1::zero(c.curve(), Form::Differential);
        let terms = [
            front(c, &self.a00, &o.a11, false)?,
            front(c, &self.a10, &o.a01, true)?,
            back(c, &self.a01, &o.a10)?,
            back(c, &self.a11, &o.a00)?,
        ];
        for t in terms.into_iter().flatten() {
            a11 = a11.add(&t, c)?;
        }
        out.a11 = a11;
        Ok(out)
    }

    /// `int_X = sum of residues` of the `(1,1)` component; other bidegrees integrate to zero.
    pub fn integrate(&self) -> Result<Scalar> {
        let c = &self.ctx;
        let a = &self.a11;
        let mut acc = c.curve().base().zero();
        for s in a.exceptions.values() {
            acc = &acc + &s.residue()?;
        }
        for p in c.candidate_poles(&a.chain_default)? {
            if a.exceptions.contains_key(p.id()) {
                continue;
            }
            // only the t^-1 coefficient matters, so expand no further than that
            acc = &acc + &expand_differential(&a.chain_default, &p, 0)?.residue()?;
        }
        Ok(acc)
    }

    /// `<alpha, beta> = int_X alpha . beta` for degree-1 cocycles.
    pub fn pairing(&self, o: &Self) -> Result<Scalar> {
        for (name, a) in [("left", self), ("right", o)] {
            if !a.a00.is_zero() || !a.a11.is_zero() {
                return Err(Error::NotCocycle(format!("{name} argument is not of degree 1")));
            }
            if !a.is_cocycle()? {
                return Err(Error::NotCocycle(format!("{name} argument is not closed")));
            }
        }
        self.cup(o)?.integrate()
    }
}

fn product_form(a: Form, b: Form) -> Option<Form> {
    a.product(b)
}

/// Pointwise product of degree-0 adeles (generic times generic, point times point).
fn point_product(c: &Ctx, a: &Adele0, b: &Adele0) -> Result<Option<Adele0>> {
    let Some(form) = product_form(a.form, b.form) else { return Ok(None) };
    let mut exc = BTreeMap::new();
    for p in union_places(&a.point_exceptions, &b.point_exceptions) {
        let s = a.point_component(c, &p)?.mul(&b.point_component(c, &p)?);
        exc.insert(p.id().clone(), s);
    }
    Ok(Some(Adele0 {
        form,
        generic: a.generic.mul(&b.generic),
        point_default: a.point_default.mul(&b.point_default),
        point_exceptions: exc,
    }))
}

/// `(a b)_(gen,x) = +- a_(gen) b_(gen,x)`.
fn front(c: &Ctx, a: &Adele0, b: &Adele1, negate: bool) -> Result<Option<Adele1>> {
    let Some(form) = product_form(a.form, b.form) else { return Ok(None) };
    let mut exc = BTreeMap::new();
    for s in b.exceptions.values() {
        let p = s.place();
        exc.insert(p.id().clone(), a.generic_at(c, p)?.mul(s));
    }
    let r = Adele1 { form, chain_default: a.generic.mul(&b.chain_default), exceptions: exc };
    Ok(Some(if negate { r.neg() } else { r }))
}

/// `(a b)_(gen,x) = a_(gen,x) b_(x)`.
fn back(c: &Ctx, a: &Adele1, b: &Adele0) -> Result<Option<Adele1>> {
    let Some(form) = product_form(a.form, b.form) else { return Ok(None) };
    let mut exc: BTreeMap<_, LaurentSeries> = BTreeMap::new();
    for p in union_places(&a.exceptions, &b.point_exceptions) {
        exc.insert(p.id().clone(), a.chain_component(c, &p)?.mul(&b.point_component(c, &p)?));
    }
    Ok(Some(Adele1 { form, chain_default: a.chain_default.mul(&b.point_default), exceptions: exc }))
}
