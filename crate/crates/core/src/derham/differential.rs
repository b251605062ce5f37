use std::fmt;
use std::sync::Arc;

use crate::arith::{ExtElement, Field, Scalar};
use crate::curve::{order_of_differential, Curve, FunctionFieldElement, Place, PlaceRegistry};
use crate::error::Result;
use crate::laurent::{expand_differential, LaurentSeries};

/// A meromorphic differential `g dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalDifferential {
    g: FunctionFieldElement,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DifferentialKind {
    /// Regular everywhere (implies second kind).
    FirstKind,
    /// Every local residue vanishes, but some pole exists.
    SecondKind,
    Neither,
}

impl RationalDifferential {
    pub fn new(g: FunctionFieldElement) -> Self {
        RationalDifferential { g }
    }

    pub fn zero(curve: &Curve) -> Self {
        Self::new(FunctionFieldElement::zero(curve))
    }

    pub fn dx(curve: &Curve) -> Self {
        Self::new(FunctionFieldElement::one(curve))
    }

    /// `x^i dx / y`, the `i`-th element of the canonical de Rham basis.
    pub fn basis_element(curve: &Curve, i: usize) -> Result<Self> {
        let x = FunctionFieldElement::x(curve);
        let y = FunctionFieldElement::y(curve)?;
        Ok(Self::new(x.pow(i as i64)?.div(&y)?))
    }

    /// The exact differential `d h`.
    pub fn exact(h: &FunctionFieldElement) -> Self {
        Self::new(h.derivative())
    }

    pub fn coefficient(&self) -> &FunctionFieldElement {
        &self.g
    }

    pub fn curve(&self) -> &Curve {
        self.g.curve()
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.g.add(&o.g))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.g.sub(&o.g))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.g.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.g.scale(c))
    }

    pub fn mul_function(&self, h: &FunctionFieldElement) -> Self {
        Self::new(self.g.mul(h))
    }

    /// The `dt`-coefficient of the expansion at a place, to absolute precision `n`.
    pub fn expand(&self, place: &Arc<Place>, n: i64) -> Result<LaurentSeries> {
        expand_differential(&self.g, place, n)
    }

    pub fn order_at(&self, place: &Arc<Place>) -> Result<Option<i64>> {
        order_of_differential(&self.g, place)
    }

    pub fn local_residue(&self, place: &Arc<Place>) -> Result<ExtElement> {
        self.expand(place, 0)?.local_residue()
    }

    pub fn residue(&self, place: &Arc<Place>) -> Result<Scalar> {
        Ok(self.local_residue(place)?.trace())
    }

    /// Places that can carry a pole: over the denominators of `g`, and at infinity.
    pub fn candidate_poles(&self, reg: &PlaceRegistry) -> Result<Vec<Arc<Place>>> {
        reg.candidate_poles_of_differential(&self.g)
    }

    /// The places where the differential actually has a pole, with their orders.
    pub fn poles(&self, reg: &PlaceRegistry) -> Result<Vec<(Arc<Place>, i64)>> {
        let mut out = Vec::new();
        for p in self.candidate_poles(reg)? {
            if let Some(o) = self.order_at(&p)? {
                if o < 0 {
                    out.push((p, o));
                }
            }
        }
        Ok(out)
    }

    /// Sum of the residues over every place; zero by the residue theorem.
    pub fn residue_sum(&self, reg: &PlaceRegistry) -> Result<Scalar> {
        let mut acc = self.curve().base().zero();
        for p in self.candidate_poles(reg)? {
            acc = &acc + &self.residue(&p)?;
        }
        Ok(acc)
    }

    pub fn classify_with(&self, reg: &PlaceRegistry) -> Result<DifferentialKind> {
        let poles = self.poles(reg)?;
        if poles.is_empty() {
            return Ok(DifferentialKind::FirstKind);
        }
        for (p, _) in &poles {
            if !self.local_residue(p)?.is_zero() {
                return Ok(DifferentialKind::Neither);
            }
        }
        Ok(DifferentialKind::SecondKind)
    }

    pub fn classify(&self) -> Result<DifferentialKind> {
        self.classify_with(&PlaceRegistry::new(self.curve()))
    }

    /// Largest pole order over all places (0 if regular).
    pub fn max_pole_order(&self, reg: &PlaceRegistry) -> Result<i64> {
        Ok(self.poles(reg)?.iter().map(|(_, o)| -o).max().unwrap_or(0))
    }
}

impl fmt::Display for RationalDifferential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx", self.g)
    }
}

/// Working precision for a differential: twice its worst pole order plus four.
pub fn default_precision(omega: &RationalDifferential, reg: &PlaceRegistry) -> Result<i64> {
    Ok(2 * omega.max_pole_order(reg)? + 4)
}
