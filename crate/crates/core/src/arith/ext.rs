//! Simple algebraic extensions `k[z]/(m(z))` of a base field.
//!
//! Residue fields of closed points live here. A rational point has the
//! degree-one field `k[z]/(z)`, which is arithmetically just `k`.

use std::fmt;
use std::sync::Arc;

use super::factor;
use super::field::Field;
use super::poly::Poly;
use super::scalar::{BaseField, Scalar};
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct ExtensionField {
    base: BaseField,
    modulus: Poly<Scalar>,
}

pub type ResidueField = Arc<ExtensionField>;

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.modulus == other.modulus
    }
}

impl ExtensionField {
    /// Builds `k[z]/(m)`, checking that `m` is monic and irreducible.
    pub fn new(modulus: Poly<Scalar>) -> Result<ResidueField> {
        if !modulus.is_monic() || modulus.deg() < 1 {
            return Err(Error::NotMonic);
        }
        if !factor::is_irreducible(&modulus)? {
            return Err(Error::Reducible(modulus.to_string()));
        }
        Ok(Self::new_unchecked(modulus))
    }

    /// Caller guarantees `modulus` is monic irreducible (e.g. it came out of a factorization).
    pub(crate) fn new_unchecked(modulus: Poly<Scalar>) -> ResidueField {
        Arc::new(ExtensionField { base: *modulus.ctx(), modulus })
    }

    /// The degree-one extension, i.e. `k` itself.
    pub fn trivial(base: BaseField) -> ResidueField {
        Self::new_unchecked(Poly::x(&base))
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn modulus(&self) -> &Poly<Scalar> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u128> {
        match self.base {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some((p as u128).pow(self.degree() as u32)),
        }
    }
}

/// Element of a simple extension, stored as its reduced representative.
#[derive(Clone, Debug)]
pub struct ExtElement {
    field: ResidueField,
    value: Poly<Scalar>,
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field) && self.value == other.value
    }
}

impl ExtElement {
    pub fn new(field: &ResidueField, value: Poly<Scalar>) -> Self {
        let value = if value.deg() < field.degree() as i64 {
            value
        } else {
            value.rem(&field.modulus).expect("nonzero modulus")
        };
        ExtElement { field: field.clone(), value }
    }

    pub fn from_base(field: &ResidueField, c: Scalar) -> Self {
        Self::new(field, Poly::constant(c))
    }

    pub fn from_coeffs(field: &ResidueField, cs: Vec<Scalar>) -> Self {
        Self::new(field, Poly::new(&field.base, cs))
    }

    /// The class of `z` (the generator).
    pub fn generator(field: &ResidueField) -> Self {
        Self::new(field, Poly::x(&field.base))
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn value(&self) -> &Poly<Scalar> {
        &self.value
    }

    /// Coordinates in the power basis `1, z, ..., z^{d-1}`.
    pub fn coordinates(&self) -> Vec<Scalar> {
        (0..self.field.degree()).map(|i| self.value.coeff(i)).collect()
    }

    /// Returns the base scalar if the element lies in `k`.
    pub fn as_base(&self) -> Option<Scalar> {
        if self.value.deg() <= 0 {
            Some(self.value.coeff(0))
        } else {
            None
        }
    }

    fn check(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field == o.field,
            "residue field mismatch"
        );
    }

    /// Checked multiplication reporting a mismatch instead of panicking.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if !(Arc::ptr_eq(&self.field, &o.field) || self.field == o.field) {
            return Err(Error::FieldMismatch("different residue fields".into()));
        }
        Ok(Field::mul(self, o))
    }

    /// Trace of multiplication-by-self as a `k`-linear map.
    pub fn trace(&self) -> Scalar {
        let d = self.field.degree();
        if d == 1 {
            return self.value.coeff(0);
        }
        let z = Self::generator(&self.field);
        let mut basis = Self::one(&self.field);
        let mut acc = self.field.base.zero();
        for i in 0..d {
            acc = Field::add(&acc, &Field::mul(self, &basis).value.coeff(i));
            basis = Field::mul(&basis, &z);
        }
        acc
    }

    /// Norm to the base field (determinant of multiplication-by-self).
    pub fn norm(&self) -> Scalar {
        let d = self.field.degree();
        let z = Self::generator(&self.field);
        let mut rows = Vec::with_capacity(d);
        let mut basis = Self::one(&self.field);
        for _ in 0..d {
            rows.push(Field::mul(self, &basis).coordinates());
            basis = Field::mul(&basis, &z);
        }
        super::linalg::determinant(&self.field.base, rows)
    }

    /// Inverse of Frobenius: in `F_{p^m}` it is `a^{p^{m-1}}`.
    pub fn pth_root(&self) -> Result<Self> {
        match self.field.base {
            BaseField::Rationals => Err(Error::NotCharacteristicP),
            BaseField::Prime(p) => {
                let mut r = self.clone();
                for _ in 1..self.field.degree() {
                    r = r.pow(p);
                }
                Ok(r)
            }
        }
    }
}

impl Poly<Scalar> {
    /// Evaluates a base-field polynomial at an element of an extension.
    pub fn eval_ext(&self, at: &ExtElement) -> ExtElement {
        let mut acc = ExtElement::zero(at.field());
        for c in self.coeffs().iter().rev() {
            acc = Field::add(&Field::mul(&acc, at), &ExtElement::from_base(at.field(), c.clone()));
        }
        acc
    }
}

impl Field for ExtElement {
    type Ctx = ResidueField;

    fn ctx(&self) -> ResidueField {
        self.field.clone()
    }

    fn zero(ctx: &ResidueField) -> Self {
        ExtElement { field: ctx.clone(), value: Poly::zero(&ctx.base) }
    }

    fn one(ctx: &ResidueField) -> Self {
        ExtElement { field: ctx.clone(), value: Poly::one(&ctx.base) }
    }

    fn from_i64(ctx: &ResidueField, n: i64) -> Self {
        ExtElement { field: ctx.clone(), value: Poly::constant(ctx.base.int(n)) }
    }

    fn characteristic(ctx: &ResidueField) -> u64 {
        ctx.base.characteristic()
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        self.check(o);
        ExtElement { field: self.field.clone(), value: self.value.add(&o.value) }
    }

    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        ExtElement { field: self.field.clone(), value: self.value.sub(&o.value) }
    }

    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        if self.field.degree() == 1 {
            let v = Field::mul(&self.value.coeff(0), &o.value.coeff(0));
            return ExtElement { field: self.field.clone(), value: Poly::constant(v) };
        }
        Self::new(&self.field, self.value.mul(&o.value))
    }

    fn neg(&self) -> Self {
        ExtElement { field: self.field.clone(), value: self.value.neg() }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            let v = self.value.coeff(0).inv()?;
            return Ok(ExtElement { field: self.field.clone(), value: Poly::constant(v) });
        }
        Ok(Self::new(&self.field, self.value.inv_mod(&self.field.modulus)?))
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            write!(f, "{}", self.value.coeff(0))
        } else {
            write!(f, "[")?;
            self.value.fmt_var(f, "z")?;
            write!(f, "]")
        }
    }
}
