use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::function_field::FunctionFieldElement;
use super::model::Curve;
use super::ratfunc::RatFunc;
use crate::arith::factor::{canonical_cmp, factor, is_irreducible};
use crate::arith::linalg::{rank, solve_columns};
use crate::arith::{ExtElement, ExtensionField, Field, Poly, ResidueField, Scalar};
use crate::error::{Error, Result};
use crate::laurent::expand::LocalCoordinates;

type P = Poly<Scalar>;

/// The point of the `x`-line under a place: a monic irreducible `pi(x)` or infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Center {
    Finite(P),
    Infinity,
}

impl Ord for Center {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Center::Finite(a), Center::Finite(b)) => canonical_cmp(a, b),
            (Center::Finite(_), Center::Infinity) => Ordering::Less,
            (Center::Infinity, Center::Finite(_)) => Ordering::Greater,
            (Center::Infinity, Center::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Center {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// How a place sits over its center. `Unique` is used on the projective line.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Branch {
    Unique,
    Split(u8),
    Ramified,
    Inert,
}

/// Totally ordered key for a place: finite centers (by degree, then coefficients) before infinity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PlaceId {
    pub center: Center,
    pub branch: Branch,
}

impl fmt::Display for PlaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.center {
            Center::Finite(pi) => write!(f, "{pi}")?,
            Center::Infinity => write!(f, "inf")?,
        }
        match self.branch {
            Branch::Unique => Ok(()),
            Branch::Split(i) => write!(f, " [split {i}]"),
            Branch::Ramified => write!(f, " [ramified]"),
            Branch::Inert => write!(f, " [inert]"),
        }
    }
}

/// A closed point of the curve together with its local data.
pub struct Place {
    id: PlaceId,
    curve: Curve,
    residue_field: ResidueField,
    x0: Option<ExtElement>,
    y0: Option<ExtElement>,
    ramification: u32,
    uniformizer: FunctionFieldElement,
    pub(crate) local: Mutex<Option<LocalCoordinates>>,
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Place")
            .field("id", &self.id)
            .field("residue_degree", &self.residue_degree())
            .field("ramification", &self.ramification)
            .finish()
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)
    }
}

impl PartialEq for Place {
    fn eq(&self, o: &Self) -> bool {
        self.id == o.id && *self.curve == *o.curve
    }
}

impl Place {
    fn build(
        curve: &Curve,
        id: PlaceId,
        residue_field: ResidueField,
        x0: Option<ExtElement>,
        y0: Option<ExtElement>,
        ramification: u32,
        uniformizer: FunctionFieldElement,
    ) -> Arc<Place> {
        Arc::new(Place {
            id,
            curve: curve.clone(),
            residue_field,
            x0,
            y0,
            ramification,
            uniformizer,
            local: Mutex::new(None),
        })
    }

    pub fn id(&self) -> &PlaceId {
        &self.id
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn center(&self) -> &Center {
        &self.id.center
    }

    pub fn branch(&self) -> Branch {
        self.id.branch
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.residue_field
    }

    pub fn residue_degree(&self) -> usize {
        self.residue_field.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.residue_degree() == 1
    }

    pub fn ramification_index(&self) -> u32 {
        self.ramification
    }

    pub fn is_infinite(&self) -> bool {
        self.id.center == Center::Infinity
    }

    /// Image of `x` in the residue field (finite places only).
    pub fn x0(&self) -> Option<&ExtElement> {
        self.x0.as_ref()
    }

    /// Image of `y` in the residue field (finite places of hyperelliptic curves).
    pub fn y0(&self) -> Option<&ExtElement> {
        self.y0.as_ref()
    }

    pub fn uniformizer(&self) -> &FunctionFieldElement {
        &self.uniformizer
    }

    /// Whether the hyperelliptic involution fixes the place.
    pub fn fixed_by_involution(&self) -> bool {
        !matches!(self.id.branch, Branch::Split(_))
    }

    /// `ord_P(dx)`.
    pub fn order_of_dx(&self) -> i64 {
        match (&self.id.center, self.id.branch) {
            (Center::Infinity, Branch::Unique) => -2,
            (Center::Infinity, _) => -3,
            (_, Branch::Ramified) => 1,
            _ => 0,
        }
    }
}

/// All places over a center, in `PlaceId` order.
pub fn places_over(curve: &Curve, center: &Center) -> Result<Vec<Arc<Place>>> {
    match center {
        Center::Infinity => Ok(places_at_infinity(curve)),
        Center::Finite(pi) => {
            if !pi.is_monic() || pi.deg() < 1 {
                return Err(Error::NotMonic);
            }
            if *pi.ctx() != curve.base() {
                return Err(Error::FieldMismatch(format!("center over {} on a curve over {}", pi.ctx(), curve.base())));
            }
            if !is_irreducible(pi)? {
                return Err(Error::Reducible(pi.to_string()));
            }
            finite_places(curve, pi)
        }
    }
}

pub fn places_at_infinity(curve: &Curve) -> Vec<Arc<Place>> {
    let base = curve.base();
    let k = ExtensionField::trivial(base);
    let x = FunctionFieldElement::x(curve);
    match curve.f() {
        None => {
            let id = PlaceId { center: Center::Infinity, branch: Branch::Unique };
            vec![Place::build(curve, id, k, None, None, 1, x.inv().expect("x nonzero"))]
        }
        Some(f) => {
            // deg f odd: a single ramified place with uniformizer x^m / y, m = (deg f - 1)/2
            let m = (f.deg() - 1) / 2;
            let y = FunctionFieldElement::y(curve).expect("hyperelliptic");
            let t = x.pow(m).expect("x nonzero").div(&y).expect("y nonzero");
            let id = PlaceId { center: Center::Infinity, branch: Branch::Ramified };
            vec![Place::build(curve, id, k, None, None, 2, t)]
        }
    }
}

/// The residue field `k[z]/m`, normalized to `k` itself when `m` is linear, together with the
/// image of `sum_j coords[j] z^j`.
fn residue_field_and_element(m: &P, coords: &[Scalar]) -> (ResidueField, ExtElement) {
    let base = *m.ctx();
    if m.deg() == 1 {
        let k = ExtensionField::trivial(base);
        let root = m.coeff(0).neg();
        let v = Poly::new(&base, coords.to_vec()).eval(&root);
        let e = ExtElement::from_base(&k, v);
        return (k, e);
    }
    let field = ExtensionField::new_unchecked(m.clone());
    let e = ExtElement::from_coeffs(&field, coords.to_vec());
    (field, e)
}

fn finite_places(curve: &Curve, pi: &P) -> Result<Vec<Arc<Place>>> {
    let base = curve.base();
    let z = [base.zero(), base.one()];
    let (k_pi, theta) = residue_field_and_element(pi, &z);
    let pi_func = FunctionFieldElement::from_poly(curve, pi.clone());
    let Some(f) = curve.f() else {
        let id = PlaceId { center: Center::Finite(pi.clone()), branch: Branch::Unique };
        return Ok(vec![Place::build(curve, id, k_pi, Some(theta), None, 1, pi_func)]);
    };
    let c = f.eval_ext(&theta);
    if c.is_zero() {
        let id = PlaceId { center: Center::Finite(pi.clone()), branch: Branch::Ramified };
        let y = FunctionFieldElement::y(curve)?;
        let zero = ExtElement::zero(&k_pi);
        return Ok(vec![Place::build(curve, id, k_pi, Some(theta), Some(zero), 2, y)]);
    }
    let d = pi.deg() as usize;
    let algebra = QuadraticAlgebra { c: c.clone(), d };
    let (chi, powers) = algebra.primitive_element(base.characteristic())?;
    let theta_coords = solve_columns(&base, &powers, &algebra.coords(&(theta.clone(), ExtElement::zero(&k_pi))))
        .expect("k[gamma] is the whole algebra");
    let s_coords = solve_columns(&base, &powers, &algebra.coords(&(ExtElement::zero(&k_pi), ExtElement::one(&k_pi))))
        .expect("k[gamma] is the whole algebra");
    let factors = factor(&chi)?;
    let n = factors.len();
    debug_assert!(n == 1 || n == 2);
    let mut out = Vec::with_capacity(n);
    for (i, (chi_i, _)) in factors.into_iter().enumerate() {
        let (field, x0) = residue_field_and_element(&chi_i, &theta_coords);
        let (_, y0) = residue_field_and_element(&chi_i, &s_coords);
        let branch = if n == 1 { Branch::Inert } else { Branch::Split(i as u8) };
        let id = PlaceId { center: Center::Finite(pi.clone()), branch };
        out.push(Place::build(curve, id, field, Some(x0), Some(y0), 1, pi_func.clone()));
    }
    Ok(out)
}

/// `K[s]/(s^2 - c)` for `K = k[z]/pi`, as pairs `(u, v) = u + v s`, flattened over `k`.
struct QuadraticAlgebra {
    c: ExtElement,
    d: usize,
}

type Pair = (ExtElement, ExtElement);

impl QuadraticAlgebra {
    fn mul(&self, a: &Pair, b: &Pair) -> Pair {
        (a.0.mul(&b.0).add(&a.1.mul(&b.1).mul(&self.c)), a.0.mul(&b.1).add(&a.1.mul(&b.0)))
    }

    fn coords(&self, a: &Pair) -> Vec<Scalar> {
        let mut v = a.0.coordinates();
        v.extend(a.1.coordinates());
        v
    }

    /// Finds `gamma` generating the algebra over `k`; returns its minimal polynomial and the
    /// coordinate columns of `1, gamma, ..., gamma^{2d-1}`.
    fn primitive_element(&self, p: u64) -> Result<(P, Vec<Vec<Scalar>>)> {
        let field = self.c.field().clone();
        let base = field.base();
        let theta = ExtElement::generator(&field);
        let one = ExtElement::one(&field);
        let mut candidates: Vec<Pair> = Vec::new();
        let lambda_bound = if p == 0 { 16 } else { p.min(16) as i64 };
        for j in 1..=self.d.max(1) as u64 {
            for lambda in 0..lambda_bound {
                candidates.push((theta.pow(j).mul_int(lambda), one.clone()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x9a1a_c7e5);
        let random_scalar = |rng: &mut ChaCha8Rng| base.int(rng.gen_range(-50..50));
        for _ in 0..256 {
            let u = ExtElement::from_coeffs(&field, (0..self.d).map(|_| random_scalar(&mut rng)).collect());
            let v = ExtElement::from_coeffs(&field, (0..self.d).map(|_| random_scalar(&mut rng)).collect());
            candidates.push((u, v));
        }
        let n = 2 * self.d;
        for gamma in candidates {
            let mut powers = Vec::with_capacity(n + 1);
            let mut acc: Pair = (one.clone(), ExtElement::zero(&field));
            for _ in 0..=n {
                powers.push(self.coords(&acc));
                acc = self.mul(&acc, &gamma);
            }
            let top = powers.pop().expect("n + 1 powers");
            if rank(powers.clone()) < n {
                continue;
            }
            let rel = solve_columns(&base, &powers, &top).expect("independent powers span");
            let mut chi: Vec<Scalar> = rel.iter().map(|r| r.neg()).collect();
            chi.push(base.one());
            return Ok((Poly::new(&base, chi), powers));
        }
        Err(Error::CheckFailed("no primitive element found for the residue algebra".into()))
    }
}

/// Places over every irreducible factor of `poly`, in order.
pub fn places_over_factors(curve: &Curve, poly: &P) -> Result<Vec<Arc<Place>>> {
    if poly.deg() < 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (pi, _) in factor(poly)? {
        out.extend(finite_places(curve, &pi)?);
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

/// Memoizes place construction so that places (and their cached expansions) are shared.
pub struct PlaceRegistry {
    curve: Curve,
    by_center: Mutex<BTreeMap<Center, Vec<Arc<Place>>>>,
}

impl fmt::Debug for PlaceRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaceRegistry({})", self.curve)
    }
}

impl PlaceRegistry {
    pub fn new(curve: &Curve) -> Self {
        PlaceRegistry { curve: curve.clone(), by_center: Mutex::new(BTreeMap::new()) }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn places_over(&self, center: &Center) -> Result<Vec<Arc<Place>>> {
        if let Some(v) = self.by_center.lock().expect("registry lock").get(center) {
            return Ok(v.clone());
        }
        let v = places_over(&self.curve, center)?;
        self.by_center.lock().expect("registry lock").insert(center.clone(), v.clone());
        Ok(v)
    }

    pub fn infinity(&self) -> Vec<Arc<Place>> {
        self.places_over(&Center::Infinity).expect("infinity always exists")
    }

    pub fn place(&self, id: &PlaceId) -> Result<Arc<Place>> {
        self.places_over(&id.center)?
            .into_iter()
            .find(|p| p.id == *id)
            .ok_or_else(|| Error::InvalidSpec(format!("no place {id}")))
    }

    pub fn over_factors(&self, poly: &P) -> Result<Vec<Arc<Place>>> {
        if poly.deg() < 1 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for (pi, _) in factor(poly)? {
            out.extend(self.places_over(&Center::Finite(pi))?);
        }
        out.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(out)
    }

    /// Places where an element built from `a + b y` may have a pole: over its denominators, and infinity.
    pub fn candidate_poles(&self, g: &FunctionFieldElement) -> Result<Vec<Arc<Place>>> {
        let mut out = self.over_factors(&g.pole_support())?;
        out.extend(self.infinity());
        Ok(out)
    }

    /// Candidate poles of a differential `g dx`: over the denominators of `g`, and infinity
    /// (`dx` itself is regular at every finite place).
    pub fn candidate_poles_of_differential(&self, g: &FunctionFieldElement) -> Result<Vec<Arc<Place>>> {
        self.candidate_poles(g)
    }
}

/// Convenience: the monic linear center `x - a`.
pub fn linear_center(curve: &Curve, a: i64) -> Center {
    let base = curve.base();
    Center::Finite(Poly::new(&base, vec![base.int(-a), base.one()]))
}

pub(crate) fn ratfunc_order(r: &RatFunc, place: &Place) -> Option<i64> {
    let e = place.ramification as i64;
    match &place.id.center {
        Center::Finite(pi) => r.valuation_at(pi).map(|v| e * v),
        Center::Infinity => r.valuation_at_infinity().map(|v| e * v),
    }
}
