use crate::arith::factor::factor;
use crate::arith::{Field, Poly, Scalar};
use crate::curve::{Curve, FunctionFieldElement, RatFunc};
use crate::error::{Error, Result};

use super::differential::RationalDifferential;

type P = Poly<Scalar>;

/// Coordinates of a de Rham class in the basis `x^i dx/y`, `0 <= i < 2g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeRhamClass {
    pub coordinates: Vec<Scalar>,
}

impl DeRhamClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|c| c.is_zero())
    }

    /// The representative `sum_i c_i x^i dx/y`.
    pub fn representative(&self, curve: &Curve) -> Result<RationalDifferential> {
        let mut acc = RationalDifferential::zero(curve);
        for (i, c) in self.coordinates.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&RationalDifferential::basis_element(curve, i)?.scale(c));
            }
        }
        Ok(acc)
    }
}

/// Result of reducing `omega`: `omega - class.representative() = d(witness)`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub class: DeRhamClass,
    pub witness: FunctionFieldElement,
}

pub fn h1dr_dimension(curve: &Curve) -> usize {
    2 * curve.genus()
}

pub fn hodge_dimension(curve: &Curve) -> usize {
    curve.genus()
}

/// The canonical basis `{x^i dx/y}_{i < 2g}` (empty on the projective line).
pub fn canonical_basis(curve: &Curve) -> Result<Vec<RationalDifferential>> {
    (0..h1dr_dimension(curve)).map(|i| RationalDifferential::basis_element(curve, i)).collect()
}

/// Coefficient of `1/v^k` in the `v`-adic expansion of `r`, where `v^k` exactly divides the denominator.
fn leading_part(r: &RatFunc, v: &P, k: usize) -> Result<P> {
    let w = r.den().div_exact(&v.pow(k as u64))?;
    Ok(r.num().mul_mod(&w.inv_mod(v)?, v))
}

fn obstruct(base_int: &Scalar, what: impl FnOnce() -> String) -> Result<()> {
    if base_int.is_zero() {
        return Err(Error::CharPReductionObstruction(what()));
    }
    Ok(())
}

/// Reduces a second-kind differential modulo exact forms to the canonical basis,
/// returning the coordinates and a primitive of the difference.
pub fn reduce_to_basis(omega: &RationalDifferential) -> Result<Reduction> {
    let curve = omega.curve().clone();
    let g = omega.coefficient();
    let (even, witness_even) = reduce_even(g.even())?;
    debug_assert!(even.is_zero());
    let Some(f) = curve.f() else {
        let witness = FunctionFieldElement::from_ratfunc(&curve, witness_even);
        return Ok(Reduction { class: DeRhamClass { coordinates: Vec::new() }, witness });
    };
    let h = g.odd().mul(&RatFunc::from_poly(f.clone()));
    let (rest, witness_odd) = reduce_odd(&h, f)?;
    let coordinates = (0..h1dr_dimension(&curve)).map(|i| rest.coeff(i)).collect();
    let witness = FunctionFieldElement::new(&curve, witness_even, witness_odd)?;
    Ok(Reduction { class: DeRhamClass { coordinates }, witness })
}

/// Hermite reduction of `a dx` on the `x`-line; everything must integrate.
fn reduce_even(a: &RatFunc) -> Result<(RatFunc, RatFunc)> {
    let base = a.base();
    let mut a = a.clone();
    let mut w = RatFunc::zero(&base);
    if a.is_zero() {
        return Ok((a, w));
    }
    for (v, _) in factor(a.den())? {
        loop {
            let k = a.den().valuation_at(&v);
            if k == 0 {
                break;
            }
            if k == 1 {
                return Err(Error::NotSecondKind(format!("simple pole with nonzero residue along {v}")));
            }
            let lead = leading_part(&a, &v, k)?;
            let m = base.int(k as i64 - 1);
            obstruct(&m, || format!("integrating a pole of order {k} along {v}"))?;
            // d(R / v^{k-1}) has leading term -(k-1) R v' / v^k
            let scale = v.derivative().scale(&m).neg().inv_mod(&v)?;
            let r = RatFunc::new(lead.mul_mod(&scale, &v), v.pow(k as u64 - 1))?;
            a = a.sub(&r.derivative());
            w = w.add(&r);
        }
    }
    let poly = a.as_polynomial().cloned().expect("all finite poles removed");
    let mut prim = vec![base.zero()];
    for (n, c) in poly.coeffs().iter().enumerate() {
        let m = base.int(n as i64 + 1);
        if !c.is_zero() {
            obstruct(&m, || format!("integrating x^{n}"))?;
            prim.push(c.div(&m)?);
        } else {
            prim.push(base.zero());
        }
    }
    w = w.add(&RatFunc::from_poly(Poly::new(&base, prim)));
    Ok((RatFunc::zero(&base), w))
}

/// Reduction of `h dx/y` using `d(r y) = (r' f + r f'/2) dx/y`. Returns the leftover
/// polynomial of degree `< deg f - 1` and the accumulated `r`.
fn reduce_odd(h: &RatFunc, f: &P) -> Result<(P, RatFunc)> {
    let base = h.base();
    let mut h = h.clone();
    let mut w = RatFunc::zero(&base);
    let f_r = RatFunc::from_poly(f.clone());
    let df_half = RatFunc::from_poly(f.derivative()).scale(&base.int(2).inv()?);
    let d_ry = |r: &RatFunc| r.derivative().mul(&f_r).add(&r.mul(&df_half));
    if h.is_zero() {
        return Ok((P::zero(&base), w));
    }
    for (v, _) in factor(h.den())? {
        let ramified = v.divides(f);
        let cofactor = if ramified { f.div_exact(&v)? } else { f.clone() };
        loop {
            let k = h.den().valuation_at(&v);
            if k == 0 || (!ramified && k == 1) {
                if k == 1 {
                    return Err(Error::NotSecondKind(format!("simple pole with nonzero residue over {v}")));
                }
                break;
            }
            let lead = leading_part(&h, &v, k)?;
            let (factor_k, j) = if ramified {
                // leading term of d(R y / v^k) is (1/2 - k) R v' (f/v) / v^k
                (base.int(1 - 2 * k as i64).div(&base.int(2))?, k)
            } else {
                (base.int(-(k as i64 - 1)), k - 1)
            };
            obstruct(&factor_k, || format!("pole of order {k} over {v}"))?;
            let unit = v.derivative().mul(&cofactor).scale(&factor_k).inv_mod(&v)?;
            let r = RatFunc::new(lead.mul_mod(&unit, &v), v.pow(j as u64))?;
            h = h.sub(&d_ry(&r));
            w = w.add(&r);
        }
    }
    let mut poly = h.as_polynomial().cloned().expect("all finite poles removed");
    let d = f.deg();
    let lc = f.leading();
    while poly.deg() >= d - 1 {
        let n = poly.deg();
        let j = n - d + 1;
        // top coefficient of d(x^j y) is (j + d/2) lc(f)
        let m = base.int(2 * j + d);
        obstruct(&m, || format!("removing x^{n} dx/y"))?;
        let c = poly.leading().mul(&base.int(2)).div(&m.mul(&lc))?;
        let r = RatFunc::from_poly(Poly::monomial(c, j as usize));
        let dr = d_ry(&r);
        poly = poly.sub(dr.as_polynomial().expect("polynomial"));
        w = w.add(&r);
    }
    Ok((poly, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational, BaseField};
    use crate::curve::{genus_two_example, legendre_elliptic, CurveModel};
    use crate::derham::DifferentialKind;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn check_witness(omega: &RationalDifferential, red: &Reduction) {
        let curve = omega.curve();
        let rest = omega.sub(&red.class.representative(curve).unwrap());
        assert_eq!(rest, RationalDifferential::exact(&red.witness));
    }

    #[test]
    fn exact_form_reduces_to_zero() {
        let c = legendre_elliptic(q());
        let x = FunctionFieldElement::x(&c);
        let red = reduce_to_basis(&RationalDifferential::exact(&x)).unwrap();
        assert!(red.class.is_zero());
        assert_eq!(red.witness, x);
    }

    #[test]
    fn worked_example() {
        let c = legendre_elliptic(q());
        let x = FunctionFieldElement::x(&c);
        let y = FunctionFieldElement::y(&c).unwrap();
        let omega = RationalDifferential::new(x.mul(&x).add(&x).div(&y).unwrap());
        // independent route: x^2 dx/y - (2/3) dy = (1/3) dx/y
        let dy = RationalDifferential::exact(&y);
        let rest = RationalDifferential::new(x.mul(&x).div(&y).unwrap()).sub(&dy.scale(&Scalar::Rational(rational(2, 3))));
        assert_eq!(rest, RationalDifferential::basis_element(&c, 0).unwrap().scale(&Scalar::Rational(rational(1, 3))));
        let red = reduce_to_basis(&omega).unwrap();
        assert_eq!(red.class.coordinates, vec![Scalar::Rational(rational(1, 3)), q().int(1)]);
        check_witness(&omega, &red);
        assert_eq!(omega.classify().unwrap(), DifferentialKind::SecondKind);
    }

    #[test]
    fn poles_at_finite_points_are_reduced() {
        let c = genus_two_example(q()).unwrap();
        let x = FunctionFieldElement::x(&c);
        let y = FunctionFieldElement::y(&c).unwrap();
        let one = FunctionFieldElement::one(&c);
        // d(y/(x-2)^2 + 1/(x^2+1) + y/x) plus x^3 dx/y
        let h = y
            .div(&x.sub(&FunctionFieldElement::int(&c, 2)).pow(2).unwrap())
            .unwrap()
            .add(&one.div(&x.mul(&x).add(&one)).unwrap())
            .add(&y.div(&x).unwrap());
        let base = RationalDifferential::basis_element(&c, 3).unwrap();
        let omega = base.add(&RationalDifferential::exact(&h));
        let red = reduce_to_basis(&omega).unwrap();
        assert_eq!(red.class.coordinates, vec![q().zero(), q().zero(), q().zero(), q().one()]);
        check_witness(&omega, &red);
    }

    #[test]
    fn first_kind_lands_in_the_hodge_part() {
        let c = genus_two_example(q()).unwrap();
        for i in 0..2 {
            let omega = RationalDifferential::basis_element(&c, i).unwrap();
            assert_eq!(omega.classify().unwrap(), DifferentialKind::FirstKind);
            let red = reduce_to_basis(&omega).unwrap();
            assert!(red.class.coordinates[2..].iter().all(|c| c.is_zero()));
        }
        assert_eq!(h1dr_dimension(&c), 4);
        assert_eq!(hodge_dimension(&c), 2);
    }

    #[test]
    fn third_kind_is_rejected() {
        let c = CurveModel::projective_line(q());
        let x = FunctionFieldElement::x(&c);
        let omega = RationalDifferential::new(x.inv().unwrap());
        assert_eq!(omega.classify().unwrap(), DifferentialKind::Neither);
        assert!(matches!(reduce_to_basis(&omega), Err(Error::NotSecondKind(_))));
        let e = legendre_elliptic(q());
        let y = FunctionFieldElement::y(&e).unwrap();
        let x = FunctionFieldElement::x(&e);
        let bad = RationalDifferential::new(y.div(&x.sub(&FunctionFieldElement::int(&e, 2))).unwrap().div(&y).unwrap());
        assert_eq!(bad.classify().unwrap(), DifferentialKind::Neither);
        assert!(reduce_to_basis(&bad).is_err());
    }

    #[test]
    fn char_p_obstruction_is_typed() {
        let f5 = BaseField::Prime(5);
        let c = CurveModel::projective_line(f5);
        let x = FunctionFieldElement::x(&c);
        let omega = RationalDifferential::new(x.pow(4).unwrap());
        assert!(matches!(reduce_to_basis(&omega), Err(Error::CharPReductionObstruction(_))));
        let ok = RationalDifferential::new(x.pow(2).unwrap());
        assert!(reduce_to_basis(&ok).is_ok());
    }
}
