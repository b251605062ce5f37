//! Base-field scalars: the rationals and prime fields `F_p`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use crate::error::{Error, Result};

/// Exact rational number; the gcd/sign normalization is maintained by `num_rational`.
pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of `F_p`, stored as its canonical representative in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeFieldElement {
    value: u64,
    modulus: u64,
}

impl PrimeFieldElement {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        PrimeFieldElement { value: v as u64, modulus }
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        let m = BigInt::from(modulus);
        let v = value.mod_floor(&m).to_u64().expect("reduced value fits");
        PrimeFieldElement { value: v, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "prime field mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        PrimeFieldElement { value: (self.value + o.value) % self.modulus, modulus: self.modulus }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        PrimeFieldElement {
            value: (self.value + self.modulus - o.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let v = (self.value as u128 * o.value as u128) % self.modulus as u128;
        PrimeFieldElement { value: v as u64, modulus: self.modulus }
    }

    pub fn neg(&self) -> Self {
        PrimeFieldElement { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2)
        let mut e = self.modulus - 2;
        let mut base = *self;
        let mut acc = PrimeFieldElement { value: 1 % self.modulus, modulus: self.modulus };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed_value(&self) -> i64 {
        if self.value > self.modulus / 2 {
            self.value as i64 - self.modulus as i64
        } else {
            self.value as i64
        }
    }
}

/// The base field `k` of a computation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(BaseField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(self, 1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_i64(self, n)
    }

    /// Parses a decimal (`-3`, `7/2`) into this field.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
                let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Rational::new(n, d)
            }
            None => Rational::from_integer(
                BigInt::from_str(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?,
            ),
        };
        self.from_rational(&q)
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &Rational) -> Result<Scalar> {
        match self {
            BaseField::Rationals => Ok(Scalar::Rational(q.clone())),
            BaseField::Prime(p) => {
                let n = PrimeFieldElement::from_bigint(q.numer(), *p);
                let d = PrimeFieldElement::from_bigint(q.denom(), *p);
                Ok(Scalar::Prime(n.mul(&d.inv()?)))
            }
        }
    }

    /// All elements, for finite fields only.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => {
                Some((0..*p).map(|v| Scalar::Prime(PrimeFieldElement::new(v as i64, *p))).collect())
            }
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// A base-field scalar.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(Rational),
    Prime(PrimeFieldElement),
}

impl Scalar {
    pub fn field(&self) -> BaseField {
        match self {
            Scalar::Rational(_) => BaseField::Rationals,
            Scalar::Prime(a) => BaseField::Prime(a.modulus),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Checked addition: reports a field mismatch instead of panicking.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Field::add(self, other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Field::mul(self, other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Field::div(self, other)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field(), other.field())));
        }
        Ok(())
    }

    /// Inverse of Frobenius; only defined in characteristic p, where it is the identity on `F_p`.
    pub fn pth_root(&self) -> Result<Self> {
        match self {
            Scalar::Rational(_) => Err(Error::NotCharacteristicP),
            Scalar::Prime(_) => Ok(self.clone()),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Field for Scalar {
    type Ctx = BaseField;

    fn ctx(&self) -> BaseField {
        self.field()
    }

    fn zero(ctx: &BaseField) -> Self {
        Self::from_i64(ctx, 0)
    }

    fn one(ctx: &BaseField) -> Self {
        Self::from_i64(ctx, 1)
    }

    fn from_i64(ctx: &BaseField, n: i64) -> Self {
        match ctx {
            BaseField::Rationals => Scalar::Rational(Rational::from_integer(BigInt::from(n))),
            BaseField::Prime(p) => Scalar::Prime(PrimeFieldElement::new(n, *p)),
        }
    }

    fn characteristic(ctx: &BaseField) -> u64 {
        ctx.characteristic()
    }

    fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime(a) => a.value == 0,
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime(a) => a.value == 1 % a.modulus,
        }
    }

    fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => Scalar::Prime(a.add(b)),
            _ => mismatch(self, o),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => Scalar::Prime(a.sub(b)),
            _ => mismatch(self, o),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => Scalar::Prime(a.mul(b)),
            _ => mismatch(self, o),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime(a) => Scalar::Prime(a.neg()),
        }
    }

    fn inv(&self) -> Result<Self> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Prime(a) => Ok(Scalar::Prime(a.inv()?)),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order used for deterministic sorting (numeric on Q, by
/// representative on F_p, rationals before prime-field elements).
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Prime(a), Scalar::Prime(b)) => (a.modulus, a.value).cmp(&(b.modulus, b.value)),
            (Scalar::Rational(_), Scalar::Prime(_)) => Ordering::Less,
            (Scalar::Prime(_), Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime(a) => write!(f, "{}", a.value),
        }
    }
}

impl Scalar {
    /// True when the scalar is a negative rational (used for pretty printing).
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Field::add(self, o)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Field::sub(self, o)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Field::mul(self, o)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Field::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_in_f5() {
        let f = BaseField::prime(5).unwrap();
        assert_eq!(f.int(2).inv().unwrap(), f.int(3));
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn pth_root_is_identity_on_prime_field() {
        let f = BaseField::prime(7).unwrap();
        for a in f.elements().unwrap() {
            assert_eq!(a.pth_root().unwrap(), a);
        }
        assert_eq!(BaseField::Rationals.one().pth_root(), Err(Error::NotCharacteristicP));
    }

    #[test]
    fn mismatch_is_reported_by_checked_ops() {
        let a = BaseField::Rationals.one();
        let b = BaseField::Prime(3).one();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(_))));
        assert!(matches!(a.try_mul(&b), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn parse_rationals_and_reduce_mod_p() {
        let q = BaseField::Rationals.parse("-7/14").unwrap();
        assert_eq!(q, Scalar::Rational(rational(-1, 2)));
        let f5 = BaseField::Prime(5);
        assert_eq!(f5.parse("1/2").unwrap(), f5.int(3));
        assert_eq!(f5.parse("1/5"), Err(Error::DivisionByZero));
        assert_eq!(BaseField::prime(9), Err(Error::NotPrime(9)));
    }
}
