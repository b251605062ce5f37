use std::fmt;

use crate::arith::{BaseField, Field, Poly, Scalar};
use crate::error::{Error, Result};

type P = Poly<Scalar>;

/// A reduced fraction `num / den` in `k(x)` with monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc {
    num: P,
    den: P,
}

impl RatFunc {
    pub fn new(num: P, den: P) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.ctx()));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_exact(&g)?, den.div_exact(&g)?);
        let lc = d.leading();
        if !lc.is_one() {
            let inv = lc.inv()?;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RatFunc { num: n, den: d })
    }

    pub fn from_poly(p: P) -> Self {
        let den = P::one(p.ctx());
        RatFunc { num: p, den }
    }

    pub fn zero(base: &BaseField) -> Self {
        Self::from_poly(P::zero(base))
    }

    pub fn one(base: &BaseField) -> Self {
        Self::from_poly(P::one(base))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(P::constant(c))
    }

    pub fn x(base: &BaseField) -> Self {
        Self::from_poly(P::x(base))
    }

    pub fn base(&self) -> BaseField {
        *self.num.ctx()
    }

    pub fn num(&self) -> &P {
        &self.num
    }

    pub fn den(&self) -> &P {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&P> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        (self.is_polynomial() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).expect("nonzero denominator");
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
            .expect("nonzero denominator")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.base());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// Substitutes a rational function for `x`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let eval = |p: &P| -> Result<Self> {
            let mut acc = Self::zero(&self.base());
            for c in p.coeffs().iter().rev() {
                acc = acc.mul(g).add(&Self::constant(c.clone()));
            }
            Ok(acc)
        };
        eval(&self.num)?.div(&eval(&self.den)?)
    }

    /// Applies `c -> c^p` to every coefficient and `x -> x^p` (the absolute Frobenius on `F_p(x)`).
    pub fn frobenius(&self) -> Result<Self> {
        let p = self.base().characteristic();
        if p == 0 {
            return Err(Error::NotCharacteristicP);
        }
        let up = |q: &P| {
            let mut cs = vec![Scalar::zero(q.ctx()); (q.deg().max(0) as usize) * p as usize + 1];
            for (i, c) in q.coeffs().iter().enumerate() {
                cs[i * p as usize] = c.pow(p);
            }
            P::new(q.ctx(), cs)
        };
        Self::new(up(&self.num), up(&self.den))
    }

    /// `ord_pi` of the function, for a monic irreducible `pi`.
    pub fn valuation_at(&self, pi: &P) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.num.valuation_at(pi) as i64 - self.den.valuation_at(pi) as i64)
    }

    /// `deg den - deg num`, the order at infinity with respect to `1/x`.
    pub fn valuation_at_infinity(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.den.deg() - self.num.deg())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn reduction_and_arithmetic() {
        let x = RatFunc::x(&q());
        let one = RatFunc::one(&q());
        let a = x.add(&one).inv().unwrap();
        let b = x.sub(&one).inv().unwrap();
        // 1/(x+1) + 1/(x-1) = 2x/(x^2-1)
        let s = a.add(&b);
        assert_eq!(s.num(), &P::from_ints(&q(), &[0, 2]));
        assert_eq!(s.den(), &P::from_ints(&q(), &[-1, 0, 1]));
        assert_eq!(s.mul(&s.inv().unwrap()), one);
        assert_eq!(x.pow(-2).unwrap().mul(&x.pow(2).unwrap()), one);
    }

    #[test]
    fn derivative_quotient_rule() {
        let x = RatFunc::x(&q());
        let f = x.inv().unwrap();
        assert_eq!(f.derivative(), x.pow(-2).unwrap().neg());
    }

    #[test]
    fn valuations() {
        let x = RatFunc::x(&q());
        let pi = P::x(&q());
        let g = x.pow(3).unwrap().div(&x.add(&RatFunc::one(&q()))).unwrap();
        assert_eq!(g.valuation_at(&pi), Some(3));
        assert_eq!(g.valuation_at_infinity(), Some(-2));
    }

    #[test]
    fn frobenius_in_char_three() {
        let f3 = BaseField::Prime(3);
        let g = RatFunc::x(&f3).add(&RatFunc::one(&f3));
        assert_eq!(g.frobenius().unwrap(), g.pow(3).unwrap());
    }
}
