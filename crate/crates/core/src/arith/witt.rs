//! Length-two Witt vectors over `F_p`, realized as `Z/p^2` via
//! `(a0, a1) <-> a0 + p*a1` with `a0, a1` in `[0, p)`.

use std::fmt;

use super::scalar::PrimeFieldElement;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct WittLength2 {
    a0: u64,
    a1: u64,
    p: u64,
}

impl WittLength2 {
    pub fn new(a0: u64, a1: u64, p: u64) -> Self {
        WittLength2 { a0: a0 % p, a1: a1 % p, p }
    }

    /// Image of an integer under `Z -> Z/p^2`.
    pub fn from_int(n: i64, p: u64) -> Self {
        let m = (p * p) as i64;
        let v = n.rem_euclid(m) as u64;
        WittLength2 { a0: v % p, a1: v / p, p }
    }

    /// The canonical lift `[0, p)` of an `F_p` element.
    pub fn lift(a: &PrimeFieldElement) -> Self {
        WittLength2 { a0: a.value(), a1: 0, p: a.modulus() }
    }

    pub fn components(&self) -> (u64, u64) {
        (self.a0, self.a1)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Representative in `[0, p^2)`.
    pub fn as_int(&self) -> u64 {
        self.a0 + self.p * self.a1
    }

    fn from_raw(v: u64, p: u64) -> Self {
        let v = v % (p * p);
        WittLength2 { a0: v % p, a1: v / p, p }
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            return Err(Error::ModulusMismatch(self.p, o.p));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::from_raw(self.as_int() + o.as_int(), self.p))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let m = self.p * self.p;
        Ok(Self::from_raw(self.as_int() + m - o.as_int(), self.p))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let v = (self.as_int() as u128 * o.as_int() as u128) % (self.p * self.p) as u128;
        Ok(Self::from_raw(v as u64, self.p))
    }

    pub fn neg(&self) -> Self {
        let m = self.p * self.p;
        Self::from_raw(m - self.as_int(), self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0 && self.a1 == 0
    }

    /// Reduction `W_2(F_p) -> F_p`.
    pub fn reduce(&self) -> PrimeFieldElement {
        PrimeFieldElement::new(self.a0 as i64, self.p)
    }

    /// For `v` divisible by `p`, the class of `v/p` in `F_p`.
    pub fn divide_by_p(&self) -> Option<PrimeFieldElement> {
        (self.a0 == 0).then(|| PrimeFieldElement::new(self.a1 as i64, self.p))
    }
}

impl fmt::Display for WittLength2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a0, self.a1)
    }
}

/// Polynomial over `Z/p^2`, used to materialize lifted curve equations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WittPoly {
    p: u64,
    coeffs: Vec<WittLength2>,
}

impl WittPoly {
    pub fn new(p: u64, mut coeffs: Vec<WittLength2>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        WittPoly { p, coeffs }
    }

    pub fn coeffs(&self) -> &[WittLength2] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> WittLength2 {
        self.coeffs.get(i).copied().unwrap_or(WittLength2::new(0, 0, self.p))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).add(&o.coeff(i)).expect("same p")).collect();
        Self::new(self.p, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).sub(&o.coeff(i)).expect("same p")).collect();
        Self::new(self.p, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(self.p, Vec::new());
        }
        let zero = WittLength2::new(0, 0, self.p);
        let mut v = vec![zero; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b).expect("same p")).expect("same p");
            }
        }
        Self::new(self.p, v)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::new(self.p, vec![WittLength2::new(1, 0, self.p)]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `P(x^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        let zero = WittLength2::new(0, 0, self.p);
        let mut v = vec![zero; (self.coeffs.len().max(1) - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = *c;
        }
        Self::new(self.p, v)
    }

    pub fn reduce(&self) -> Vec<PrimeFieldElement> {
        self.coeffs.iter().map(|c| c.reduce()).collect()
    }

    /// Coefficientwise division by `p`, if every coefficient is divisible.
    pub fn divide_by_p(&self) -> Option<Vec<PrimeFieldElement>> {
        self.coeffs.iter().map(|c| c.divide_by_p()).collect()
    }
}
