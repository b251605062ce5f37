use crate::arith::{Poly, Scalar};
use crate::curve::{FunctionFieldElement, RatFunc};
use crate::error::{Error, Result};

use super::differential::RationalDifferential;

type P = Poly<Scalar>;

fn char_p(omega: &RationalDifferential) -> Result<u64> {
    match omega.curve().characteristic() {
        0 => Err(Error::NotCharacteristicP),
        p => Ok(p),
    }
}

/// Writes `r = sum_{i<p} u_i^p x^i` over `F_p(x)` and returns `u_i`.
fn pth_power_components(r: &RatFunc, p: u64) -> Vec<RatFunc> {
    let base = r.base();
    // r = (N D^{p-1}) / D^p, then split N D^{p-1} by exponent class mod p
    let numerator = r.num().mul(&r.den().pow(p - 1));
    let mut parts = vec![vec![base.zero(); numerator.coeffs().len() / p as usize + 1]; p as usize];
    for (e, c) in numerator.coeffs().iter().enumerate() {
        parts[e % p as usize][e / p as usize] = c.pth_root().expect("prime field");
    }
    parts
        .into_iter()
        .map(|cs| RatFunc::new(P::new(&base, cs), r.den().clone()).expect("nonzero denominator"))
        .collect()
}

/// The component `u_i` of `g = sum_i u_i^p x^i` for `g` in the function field.
fn component(g: &FunctionFieldElement, p: u64, i: usize) -> Result<FunctionFieldElement> {
    let curve = g.curve();
    let a = pth_power_components(g.even(), p).swap_remove(i);
    if g.odd().is_zero() {
        return Ok(FunctionFieldElement::from_ratfunc(curve, a));
    }
    // b y = y^p * (b f^{-(p-1)/2}), so the odd part contributes u_i(b f^{-(p-1)/2}) * y
    let f = RatFunc::from_poly(curve.f().expect("odd part needs y").clone());
    let twisted = g.odd().mul(&f.pow(-((p as i64 - 1) / 2))?);
    let b = pth_power_components(&twisted, p).swap_remove(i);
    FunctionFieldElement::new(curve, a, b)
}

/// The Cartier operator: `C(sum_i u_i^p x^i dx) = u_{p-1} dx`.
pub fn cartier(omega: &RationalDifferential) -> Result<RationalDifferential> {
    let p = char_p(omega)?;
    Ok(RationalDifferential::new(component(omega.coefficient(), p, p as usize - 1)?))
}

/// `g^p` for `g` in the function field over `F_p`.
pub fn frobenius(g: &FunctionFieldElement) -> Result<FunctionFieldElement> {
    let curve = g.curve();
    let p = curve.characteristic();
    if p == 0 {
        return Err(Error::NotCharacteristicP);
    }
    let a = g.even().frobenius()?;
    if g.odd().is_zero() {
        return Ok(FunctionFieldElement::from_ratfunc(curve, a));
    }
    // (b y)^p = b^p f^{(p-1)/2} y
    let f = RatFunc::from_poly(curve.f().expect("hyperelliptic").clone());
    let b = g.odd().frobenius()?.mul(&f.pow((p as i64 - 1) / 2)?);
    FunctionFieldElement::new(curve, a, b)
}

/// `C^{-1}(g dx) = g^p x^{p-1} dx`.
pub fn cartier_inverse(omega: &RationalDifferential) -> Result<RationalDifferential> {
    let p = char_p(omega)?;
    let curve = omega.curve();
    let xp = FunctionFieldElement::x(curve).pow(p as i64 - 1)?;
    Ok(RationalDifferential::new(frobenius(omega.coefficient())?.mul(&xp)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BaseField;
    use crate::curve::{legendre_elliptic, CurveModel};

    #[test]
    fn cartier_examples() {
        for p in [3u64, 5, 7] {
            let c = CurveModel::projective_line(BaseField::Prime(p));
            let x = FunctionFieldElement::x(&c);
            let xp1 = RationalDifferential::new(x.pow(p as i64 - 1).unwrap());
            assert_eq!(cartier(&xp1).unwrap(), RationalDifferential::dx(&c));
            assert!(cartier(&RationalDifferential::dx(&c)).unwrap().is_zero());
            assert_eq!(cartier_inverse(&RationalDifferential::dx(&c)).unwrap(), xp1);
        }
    }

    #[test]
    fn cartier_of_log_like_form() {
        let f3 = BaseField::Prime(3);
        let c = CurveModel::projective_line(f3);
        let x = FunctionFieldElement::x(&c);
        let g = x.mul(&x).add(&FunctionFieldElement::one(&c));
        let omega = RationalDifferential::exact(&g).mul_function(&g.pow(2).unwrap());
        assert_eq!(cartier(&omega).unwrap(), RationalDifferential::exact(&g));
    }

    #[test]
    fn round_trip_on_the_elliptic_curve() {
        let c = legendre_elliptic(BaseField::Prime(5));
        let x = FunctionFieldElement::x(&c);
        let y = FunctionFieldElement::y(&c).unwrap();
        let omega = RationalDifferential::new(x.add(&y.div(&x).unwrap()));
        assert_eq!(cartier(&cartier_inverse(&omega).unwrap()).unwrap(), omega);
        // C(v^p w) = v C(w)
        let v = y.add(&x);
        let lhs = cartier(&omega.mul_function(&frobenius(&v).unwrap())).unwrap();
        assert_eq!(lhs, cartier(&omega).unwrap().mul_function(&v));
        assert!(cartier(&RationalDifferential::dx(&legendre_elliptic(BaseField::Rationals))).is_err());
    }
}
