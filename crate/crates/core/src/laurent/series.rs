use std::fmt;
use std::sync::Arc;

use crate::arith::{ExtElement, Field, Poly, ResidueField, Scalar};
use crate::curve::Place;
use crate::error::{Error, Result};

/// Precision used for series known exactly (finite sums of monomials).
pub const EXACT: i64 = i64::MAX / 4;

const MAX_INVERSE_TERMS: i64 = 256;

/// A truncated Laurent series `sum_{e >= start} c_e t^e + O(t^precision)` in the uniformizer
/// of a place, with coefficients in its residue field.
///
/// Coefficients below `precision` are exact. Arithmetic propagates precision pessimistically.
#[derive(Clone)]
pub struct LaurentSeries {
    place: Arc<Place>,
    start: i64,
    coeffs: Vec<ExtElement>,
    precision: i64,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries[{}]({self})", self.place.id())
    }
}

impl PartialEq for LaurentSeries {
    fn eq(&self, o: &Self) -> bool {
        self.place.id() == o.place.id()
            && self.precision == o.precision
            && self.start == o.start
            && self.coeffs == o.coeffs
    }
}

impl LaurentSeries {
    /// Builds the series with `coeffs[i]` the coefficient of `t^{start + i}`; terms at or beyond
    /// `precision` are dropped and missing terms below it are zero.
    pub fn new(place: &Arc<Place>, start: i64, mut coeffs: Vec<ExtElement>, precision: i64) -> Self {
        let keep = (precision - start).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = LaurentSeries { place: place.clone(), start, coeffs, precision };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.start = self.precision;
        }
    }

    /// One past the last stored exponent; `i64::MIN` for the zero series.
    fn end(&self) -> i64 {
        if self.coeffs.is_empty() {
            i64::MIN
        } else {
            self.start + self.coeffs.len() as i64
        }
    }

    pub fn zero(place: &Arc<Place>, precision: i64) -> Self {
        LaurentSeries { place: place.clone(), start: precision, coeffs: Vec::new(), precision }
    }

    pub fn constant(place: &Arc<Place>, c: ExtElement, precision: i64) -> Self {
        Self::monomial(place, c, 0, precision)
    }

    pub fn one(place: &Arc<Place>, precision: i64) -> Self {
        Self::constant(place, ExtElement::one(place.residue_field()), precision)
    }

    pub fn from_scalar(place: &Arc<Place>, c: &Scalar, precision: i64) -> Self {
        Self::constant(place, ExtElement::from_base(place.residue_field(), c.clone()), precision)
    }

    /// `c t^e + O(t^precision)`.
    pub fn monomial(place: &Arc<Place>, c: ExtElement, e: i64, precision: i64) -> Self {
        if e >= precision {
            return Self::zero(place, precision);
        }
        Self::new(place, e, vec![c], precision)
    }

    /// The uniformizer `t` itself.
    pub fn t(place: &Arc<Place>, precision: i64) -> Self {
        Self::monomial(place, ExtElement::one(place.residue_field()), 1, precision)
    }

    pub fn place(&self) -> &Arc<Place> {
        &self.place
    }

    pub fn field(&self) -> &ResidueField {
        self.place.residue_field()
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// Exponent of the first stored coefficient; equals `order()` unless the series is zero.
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn is_exact(&self) -> bool {
        self.precision >= EXACT / 2
    }

    /// `(exponent, coefficient)` for every nonzero known term.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExtElement)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Valuation, or `None` if every known coefficient vanishes.
    pub fn order(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn raw(&self, e: i64) -> ExtElement {
        let i = e - self.start;
        if i < 0 || i as usize >= self.coeffs.len() {
            ExtElement::zero(self.field())
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn coeff(&self, e: i64) -> Result<ExtElement> {
        if e >= self.precision {
            return Err(Error::InsufficientPrecision { needed: e + 1, known: self.precision });
        }
        Ok(self.raw(e))
    }

    pub fn same_place(&self, o: &Self) -> Result<()> {
        if self.place.id() != o.place.id() || **self.place.curve() != **o.place.curve() {
            return Err(Error::FieldMismatch(format!("series at {} and {}", self.place.id(), o.place.id())));
        }
        Ok(())
    }

    fn assert_same_place(&self, o: &Self) {
        if let Err(e) = self.same_place(o) {
            panic!("{e}");
        }
    }

    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        Self::new(&self.place, self.start, self.coeffs.clone(), precision)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.assert_same_place(o);
        let precision = self.precision.min(o.precision);
        let start = self.start.min(o.start).min(precision);
        let end = self.end().max(o.end()).min(precision).max(start);
        let coeffs = (start..end).map(|e| self.raw(e).add(&o.raw(e))).collect();
        Self::new(&self.place, start, coeffs, precision)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_place(o)?;
        Ok(self.add(o))
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            place: self.place.clone(),
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &ExtElement) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect();
        Self::new(&self.place, self.start, coeffs, self.precision)
    }

    pub fn scale_base(&self, c: &Scalar) -> Self {
        self.scale(&ExtElement::from_base(self.field(), c.clone()))
    }

    pub fn mul_int(&self, n: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.mul_int(n)).collect();
        Self::new(&self.place, self.start, coeffs, self.precision)
    }

    /// Multiplication by `t^k`, which is exact.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            place: self.place.clone(),
            start: self.start + k,
            coeffs: self.coeffs.clone(),
            precision: self.precision + k,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.assert_same_place(o);
        let precision = (self.precision + o.start).min(o.precision + self.start);
        let start = self.start + o.start;
        if self.is_zero() || o.is_zero() || start >= precision {
            return Self::zero(&self.place, precision);
        }
        let n = ((precision - start) as usize).min(self.coeffs.len() + o.coeffs.len() - 1);
        let mut coeffs = vec![ExtElement::zero(self.field()); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.place, start, coeffs, precision)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same_place(o)?;
        Ok(self.mul(o))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InsufficientPrecision { needed: self.precision + 1, known: self.precision });
        }
        // relative precision; capped so that exact (unbounded) inputs stay finite
        let n = (self.precision - self.start).min(MAX_INVERSE_TERMS) as usize;
        let lead_inv = self.coeffs[0].inv()?;
        let mut b: Vec<ExtElement> = Vec::with_capacity(n);
        b.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = ExtElement::zero(self.field());
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = acc.add(&self.coeffs[i].mul(&b[k - i]));
            }
            b.push(acc.mul(&lead_inv).neg());
        }
        Ok(Self::new(&self.place, -self.start, b, n as i64 - self.start))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut sq = base;
        let mut acc = Self::one(&self.place, EXACT);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| c.mul_int(self.start + i as i64)).collect();
        Self::new(&self.place, self.start - 1, coeffs, self.precision - 1)
    }

    /// Termwise antiderivative with zero constant term. Fails if the `t^{-1}` coefficient is
    /// nonzero, or (in characteristic p) if some `t^{e}` with `p | e + 1` has a nonzero coefficient.
    pub fn antiderivative(&self) -> Result<Self> {
        if self.precision <= -1 {
            return Err(Error::InsufficientPrecision { needed: 0, known: self.precision });
        }
        let p = ExtElement::characteristic(self.field()) as i64;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.start + i as i64;
            if c.is_zero() {
                coeffs.push(c.clone());
                continue;
            }
            if e == -1 {
                return Err(Error::NonzeroResidue(format!("residue {c} at {}", self.place.id())));
            }
            if p != 0 && (e + 1).rem_euclid(p) == 0 {
                return Err(Error::CharPObstruction { exponent: e });
            }
            coeffs.push(c.div(&ExtElement::from_i64(self.field(), e + 1))?);
        }
        Ok(Self::new(&self.place, self.start + 1, coeffs, self.precision + 1))
    }

    /// Coefficient of `t^{-1}` in the residue field.
    pub fn local_residue(&self) -> Result<ExtElement> {
        self.coeff(-1)
    }

    /// Trace of the local residue down to the base field.
    pub fn residue(&self) -> Result<Scalar> {
        Ok(self.local_residue()?.trace())
    }

    /// Terms with negative exponent; exact, so the precision is kept.
    pub fn principal_part(&self) -> Self {
        let coeffs: Vec<ExtElement> =
            self.coeffs.iter().take((-self.start).max(0) as usize).cloned().collect();
        Self::new(&self.place, self.start, coeffs, self.precision)
    }

    /// True if `self - other` vanishes to the smaller of the two precisions.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.same_place(o).is_ok() && self.sub(o).is_zero()
    }

    /// Regular at the place, i.e. no negative-exponent term.
    pub fn is_integral(&self) -> bool {
        self.is_zero() || self.start >= 0
    }

    /// Horner evaluation of a base-field polynomial at this series.
    pub fn eval_poly(&self, p: &Poly<Scalar>) -> Self {
        let mut acc = Self::zero(&self.place, EXACT);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::from_scalar(&self.place, c, EXACT));
        }
        acc
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{e}")?,
            }
        }
        if self.is_exact() {
            if first {
                write!(f, "0")?;
            }
            return Ok(());
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(t^{})", self.precision)
    }
}
