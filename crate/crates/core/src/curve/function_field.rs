use std::fmt;

use super::model::Curve;
use super::ratfunc::RatFunc;
use crate::arith::{Poly, Scalar};
use crate::error::{Error, Result};

/// An element `a + b*y` of the function field, with `a, b` in `k(x)`.
/// On the projective line `b` is always zero.
#[derive(Clone, Debug)]
pub struct FunctionFieldElement {
    curve: Curve,
    a: RatFunc,
    b: RatFunc,
}

impl PartialEq for FunctionFieldElement {
    fn eq(&self, o: &Self) -> bool {
        *self.curve == *o.curve && self.a == o.a && self.b == o.b
    }
}

impl FunctionFieldElement {
    pub fn new(curve: &Curve, a: RatFunc, b: RatFunc) -> Result<Self> {
        if !curve.is_hyperelliptic() && !b.is_zero() {
            return Err(Error::InvalidCurve("the projective line has no y".into()));
        }
        if a.base() != curve.base() || b.base() != curve.base() {
            return Err(Error::FieldMismatch(format!("{} vs {}", a.base(), curve.base())));
        }
        Ok(FunctionFieldElement { curve: curve.clone(), a, b })
    }

    pub fn from_ratfunc(curve: &Curve, a: RatFunc) -> Self {
        let b = RatFunc::zero(&curve.base());
        FunctionFieldElement { curve: curve.clone(), a, b }
    }

    pub fn from_poly(curve: &Curve, p: Poly<Scalar>) -> Self {
        Self::from_ratfunc(curve, RatFunc::from_poly(p))
    }

    pub fn zero(curve: &Curve) -> Self {
        Self::from_ratfunc(curve, RatFunc::zero(&curve.base()))
    }

    pub fn one(curve: &Curve) -> Self {
        Self::from_ratfunc(curve, RatFunc::one(&curve.base()))
    }

    pub fn constant(curve: &Curve, c: Scalar) -> Self {
        Self::from_ratfunc(curve, RatFunc::constant(c))
    }

    pub fn int(curve: &Curve, n: i64) -> Self {
        Self::constant(curve, curve.base().int(n))
    }

    pub fn x(curve: &Curve) -> Self {
        Self::from_ratfunc(curve, RatFunc::x(&curve.base()))
    }

    pub fn y(curve: &Curve) -> Result<Self> {
        Self::new(curve, RatFunc::zero(&curve.base()), RatFunc::one(&curve.base()))
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// The `k(x)` part `a`.
    pub fn even(&self) -> &RatFunc {
        &self.a
    }

    /// The coefficient `b` of `y`.
    pub fn odd(&self) -> &RatFunc {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.b.is_zero() {
            self.a.as_constant()
        } else {
            None
        }
    }

    fn f(&self) -> RatFunc {
        match self.curve.f() {
            Some(f) => RatFunc::from_poly(f.clone()),
            None => RatFunc::zero(&self.curve.base()),
        }
    }

    fn with(&self, a: RatFunc, b: RatFunc) -> Self {
        FunctionFieldElement { curve: self.curve.clone(), a, b }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.with(self.a.add(&o.a), self.b.add(&o.b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.with(self.a.sub(&o.a), self.b.sub(&o.b))
    }

    pub fn neg(&self) -> Self {
        self.with(self.a.neg(), self.b.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.b.is_zero() && o.b.is_zero() {
            return self.with(self.a.mul(&o.a), self.b.clone());
        }
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&self.f()));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        self.with(a, b)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.with(self.a.scale(c), self.b.scale(c))
    }

    pub fn mul_ratfunc(&self, r: &RatFunc) -> Self {
        self.with(self.a.mul(r), self.b.mul(r))
    }

    /// The hyperelliptic involution `y -> -y`.
    pub fn conjugate(&self) -> Self {
        self.with(self.a.clone(), self.b.neg())
    }

    /// `N(g) = g * conj(g) = a^2 - b^2 f`, an element of `k(x)`.
    pub fn norm(&self) -> RatFunc {
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&self.f()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(self.with(self.a.inv()?, self.b.clone()));
        }
        let n = self.norm().inv()?;
        Ok(self.conjugate().mul_ratfunc(&n))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut sq = base;
        let mut acc = Self::one(&self.curve);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            k >>= 1;
        }
        Ok(acc)
    }

    /// `dg/dx`, using `dy/dx = f'/(2y) = f' y / (2f)`.
    pub fn derivative(&self) -> Self {
        let da = self.a.derivative();
        if self.b.is_zero() {
            return self.with(da, self.b.clone());
        }
        let f = self.curve.f().expect("hyperelliptic");
        let twice_f = RatFunc::from_poly(f.scale(&self.curve.base().int(2)));
        let df = RatFunc::from_poly(f.derivative());
        let db = self.b.derivative().add(&self.b.mul(&df).div(&twice_f).expect("f nonzero"));
        self.with(da, db)
    }

    /// Denominators whose irreducible factors carry every finite pole of the element.
    pub fn pole_support(&self) -> Poly<Scalar> {
        self.a.den().mul(self.b.den())
    }
}

impl fmt::Display for FunctionFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*y", self.b),
            (false, false) => write!(f, "{} + ({})*y", self.a, self.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BaseField;
    use crate::curve::model::legendre_elliptic;

    #[test]
    fn y_squared_is_f() {
        let c = legendre_elliptic(BaseField::Rationals);
        let y = FunctionFieldElement::y(&c).unwrap();
        let x = FunctionFieldElement::x(&c);
        let f = x.pow(3).unwrap().sub(&x);
        assert_eq!(y.mul(&y), f);
    }

    #[test]
    fn inverse_and_derivative() {
        let c = legendre_elliptic(BaseField::Rationals);
        let y = FunctionFieldElement::y(&c).unwrap();
        let x = FunctionFieldElement::x(&c);
        let g = x.add(&y);
        assert_eq!(g.mul(&g.inv().unwrap()), FunctionFieldElement::one(&c));
        // d(y^2)/dx = f'
        let d = y.mul(&y).derivative();
        let f_prime = x.mul(&x).scale(&BaseField::Rationals.int(3)).sub(&FunctionFieldElement::one(&c));
        assert_eq!(d, f_prime);
        // Leibniz: (y*y)' = 2 y y'
        assert_eq!(y.derivative().mul(&y).scale(&BaseField::Rationals.int(2)), d);
    }

    #[test]
    fn projective_line_has_no_y() {
        let c = crate::curve::model::CurveModel::projective_line(BaseField::Rationals);
        assert!(FunctionFieldElement::y(&c).is_err());
    }
}
