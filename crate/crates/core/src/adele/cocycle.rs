use std::collections::BTreeMap;

use super::context::{Ctx, Form};
use super::mixed::MixedAdele;
use super::types::{Adele0, Adele1};
use crate::arith::Field;
use crate::curve::FunctionFieldElement;
use crate::derham::{DifferentialKind, RationalDifferential};
use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;

/// The diagonal cocycle of a differential: `omega` at `(gen)` and at every point, nothing on chains.
/// A cocycle exactly when `omega` is of the first kind.
pub fn diagonal_cocycle(ctx: &Ctx, omega: &RationalDifferential) -> MixedAdele {
    MixedAdele::zero(ctx).with_10(Adele0::diagonal(Form::Differential, omega.coefficient()))
}

/// A degree-1 cocycle representing the class of a second-kind differential.
///
/// At each pole `x` the chain component is a local primitive `a_(gen,x)` of `omega`. In
/// characteristic 0 it is the full termwise antiderivative and the point component at `x` is 0;
/// in characteristic p only the principal part is integrated and the point component is the
/// regular remainder. Away from the poles the point components are `omega` itself.
pub fn cocycle_from_second_kind(ctx: &Ctx, omega: &RationalDifferential) -> Result<MixedAdele> {
    let reg = ctx.registry();
    if omega.classify_with(reg)? == DifferentialKind::Neither {
        return Err(Error::NotSecondKind(omega.to_string()));
    }
    let char_zero = ctx.curve().characteristic() == 0;
    let mut points = BTreeMap::new();
    let mut chains = BTreeMap::new();
    for (place, _) in omega.poles(reg)? {
        let local = ctx.local(Form::Differential, omega.coefficient(), &place)?;
        let (primitive, point) = if char_zero {
            (local.antiderivative()?, LaurentSeries::zero(&place, ctx.precision()))
        } else {
            let a = local.principal_part().antiderivative()?;
            let rest = local.sub(&a.derivative());
            (a, rest)
        };
        points.insert(place.id().clone(), point);
        chains.insert(place.id().clone(), primitive);
    }
    let g = omega.coefficient();
    let a10 = Adele0 { form: Form::Differential, generic: g.clone(), point_default: g.clone(), point_exceptions: points };
    let a01 = Adele1 { form: Form::Function, chain_default: FunctionFieldElement::zero(ctx.curve()), exceptions: chains };
    let alpha = MixedAdele::zero(ctx).with_10(a10).with_01(a01);
    if !alpha.is_cocycle()? {
        return Err(Error::NotCocycle(format!("construction for {omega}")));
    }
    Ok(alpha)
}

/// For a closed `(0,1)`-adele in characteristic 0, returns `b` of bidegree `(0,0)` with `D b = beta`.
/// `Ok(None)` means some component is not constant, which cannot happen for closed input.
pub fn try_coboundary_01(ctx: &Ctx, beta: &Adele1) -> Result<Option<Adele0>> {
    let p = ctx.curve().characteristic();
    if p != 0 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    if beta.form != Form::Function {
        return Err(Error::NotClosed("expected a function-valued (0,1)-adele".into()));
    }
    let closed = beta.chain_default.derivative().is_zero()
        && beta.exceptions.values().all(|s| s.derivative().is_zero());
    if !closed {
        return Err(Error::NotClosed("D' of the chain components is nonzero".into()));
    }
    let Some(c0) = beta.chain_default.as_constant() else { return Ok(None) };
    let mut exceptions = BTreeMap::new();
    for (id, s) in &beta.exceptions {
        if s.terms().any(|(e, _)| e != 0) {
            return Ok(None);
        }
        exceptions.insert(id.clone(), s.neg());
    }
    let curve = ctx.curve();
    let witness = Adele0 {
        form: Form::Function,
        generic: FunctionFieldElement::zero(curve),
        point_default: FunctionFieldElement::constant(curve, c0.neg()),
        point_exceptions: exceptions,
    };
    let target = MixedAdele::zero(ctx).with_01(beta.clone());
    let image = MixedAdele::zero(ctx).with_00(witness.clone()).d()?;
    if !image.agrees_with(&target)? {
        return Err(Error::CheckFailed("coboundary witness does not reproduce beta".into()));
    }
    Ok(Some(witness))
}
