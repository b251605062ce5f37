//! Canonical JSON form of adeles, used in reports and golden files.

use serde_json::{json, Value};

use super::context::Form;
use super::mixed::MixedAdele;
use super::types::{Adele0, Adele1, Exceptions};
use crate::arith::{Poly, Scalar};
use crate::curve::{FunctionFieldElement, RatFunc};
use crate::laurent::LaurentSeries;

fn poly(p: &Poly<Scalar>) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn ratfunc_json(r: &RatFunc) -> Value {
    json!({ "num": poly(r.num()), "den": poly(r.den()) })
}

pub fn function_json(g: &FunctionFieldElement) -> Value {
    json!({ "a": ratfunc_json(g.even()), "b": ratfunc_json(g.odd()) })
}

pub fn series_json(s: &LaurentSeries) -> Value {
    let coefficients: Vec<Value> = (s.start()..s.precision().min(s.start() + 4096))
        .map(|e| {
            let c = s.coeff(e).expect("below precision");
            Value::Array(c.coordinates().iter().map(|x| Value::String(x.to_string())).collect())
        })
        .collect();
    json!({
        "place": s.place().id().to_string(),
        "min_exponent": s.start(),
        "precision": s.precision(),
        "coefficients": coefficients,
    })
}

fn exceptions_json(e: &Exceptions) -> Value {
    Value::Array(e.values().map(series_json).collect())
}

fn form_name(f: Form) -> &'static str {
    match f {
        Form::Function => "function",
        Form::Differential => "differential",
    }
}

pub fn adele0_json(a: &Adele0) -> Value {
    json!({
        "form": form_name(a.form),
        "generic": function_json(&a.generic),
        "point_default": function_json(&a.point_default),
        "point_exceptions": exceptions_json(&a.point_exceptions),
    })
}

pub fn adele1_json(a: &Adele1) -> Value {
    json!({
        "form": form_name(a.form),
        "chain_default": function_json(&a.chain_default),
        "chain_exceptions": exceptions_json(&a.exceptions),
    })
}

pub fn mixed_json(a: &MixedAdele) -> Value {
    json!({
        "precision": a.ctx().precision(),
        "a00": adele0_json(&a.a00),
        "a10": adele0_json(&a.a10),
        "a01": adele1_json(&a.a01),
        "a11": adele1_json(&a.a11),
    })
}
