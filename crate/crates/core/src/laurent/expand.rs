use std::sync::Arc;

use super::series::{LaurentSeries, EXACT};
use crate::arith::{ExtElement, Field, Poly, Scalar};
use crate::curve::{Branch, Center, FunctionFieldElement, Place, RatFunc};
use crate::error::{Error, Result};

/// Expansions of `x` and `y` in the uniformizer of a place.
#[derive(Clone, Debug)]
pub struct LocalCoordinates {
    pub x: LaurentSeries,
    pub y: Option<LaurentSeries>,
}

impl LocalCoordinates {
    fn precision(&self) -> i64 {
        let px = self.x.precision();
        self.y.as_ref().map_or(px, |y| px.min(y.precision()))
    }
}

const MAX_ROUNDS: usize = 16;

fn newton_steps(target: i64) -> usize {
    let mut steps = 1;
    let mut reach = 1i64;
    while reach < target {
        reach *= 2;
        steps += 1;
    }
    steps + 1
}

/// Solves `q(X) = rhs` for `X` near `x0`, where `q'(x0)` is a unit, to precision `target`.
fn newton_root(place: &Arc<Place>, q: &Poly<Scalar>, rhs: &LaurentSeries, x0: &ExtElement, target: i64) -> Result<LaurentSeries> {
    let dq = q.derivative();
    let mut x = LaurentSeries::constant(place, x0.clone(), target);
    for _ in 0..newton_steps(target) {
        let err = x.eval_poly(q).sub(rhs);
        x = x.sub(&err.div(&x.eval_poly(&dq))?).truncate(target);
    }
    Ok(x)
}

/// Square root of `f` with constant term `y0`, to precision `target` (needs `f(0) = y0^2 != 0`).
fn newton_sqrt(place: &Arc<Place>, f: &LaurentSeries, y0: &ExtElement, target: i64) -> Result<LaurentSeries> {
    let half = ExtElement::from_i64(place.residue_field(), 2).inv()?;
    let mut y = LaurentSeries::constant(place, y0.clone(), target);
    for _ in 0..newton_steps(target) {
        y = y.add(&f.div(&y)?).scale(&half).truncate(target);
    }
    Ok(y)
}

fn compute(place: &Arc<Place>, w: i64) -> Result<LocalCoordinates> {
    let curve = place.curve().clone();
    let t = LaurentSeries::t(place, EXACT);
    match (place.center(), place.branch()) {
        (Center::Infinity, Branch::Unique) => Ok(LocalCoordinates { x: t.inv()?, y: None }),
        (Center::Infinity, _) => {
            let f = curve.f().expect("hyperelliptic");
            let d = f.deg() as usize;
            let m = ((d - 1) / 2) as i64;
            // with s = 1/x: t^2 = s / g(s), g(s) = sum_i a_{d-i} s^i
            let g = Poly::new(f.ctx(), f.coeffs().iter().rev().cloned().collect());
            let t2 = t.mul(&t);
            let mut s = LaurentSeries::zero(place, 2);
            while s.precision() < w + 4 {
                s = t2.mul(&s.eval_poly(&g));
            }
            let x = s.inv()?;
            let y = x.pow(m)?.mul(&t.inv()?);
            Ok(LocalCoordinates { x, y: Some(y) })
        }
        (Center::Finite(pi), Branch::Ramified) => {
            let f = curve.f().expect("hyperelliptic");
            let x0 = place.x0().expect("finite place");
            let x = newton_root(place, f, &t.mul(&t), x0, w)?;
            let _ = pi;
            Ok(LocalCoordinates { x, y: Some(t) })
        }
        (Center::Finite(pi), _) => {
            let x0 = place.x0().expect("finite place");
            let x = if pi.deg() == 1 {
                LaurentSeries::constant(place, x0.clone(), EXACT).add(&t)
            } else {
                newton_root(place, pi, &t, x0, w)?
            };
            let y = match curve.f() {
                None => None,
                Some(f) => Some(newton_sqrt(place, &x.eval_poly(f), place.y0().expect("finite place"), w)?),
            };
            Ok(LocalCoordinates { x, y })
        }
    }
}

/// Local coordinates known to at least precision `need`, from the place's cache when possible.
pub fn local_coordinates(place: &Arc<Place>, need: i64) -> Result<LocalCoordinates> {
    {
        let cache = place.local.lock().expect("expansion cache");
        if let Some(c) = cache.as_ref() {
            if c.precision() >= need {
                return Ok(c.clone());
            }
        }
    }
    let mut w = need.max(1);
    for _ in 0..MAX_ROUNDS {
        let c = compute(place, w)?;
        if c.precision() >= need {
            *place.local.lock().expect("expansion cache") = Some(c.clone());
            return Ok(c);
        }
        w += need - c.precision() + 2;
    }
    Err(Error::InsufficientPrecision { needed: need, known: w })
}

/// Runs `eval` on local coordinates of growing precision until its result is known to `n`,
/// then truncates to exactly `n`.
fn adaptive(
    place: &Arc<Place>,
    n: i64,
    eval: impl Fn(&LocalCoordinates) -> Result<LaurentSeries>,
) -> Result<LaurentSeries> {
    let mut w = n.max(1) + 2;
    for _ in 0..MAX_ROUNDS {
        let full = local_coordinates(place, w)?;
        // exact coordinates would make inverses infinite; cut them to the working precision
        let c = LocalCoordinates { x: full.x.truncate(w), y: full.y.as_ref().map(|y| y.truncate(w)) };
        // cancellation can hide a leading coefficient below the working precision
        let r = match eval(&c) {
            Err(Error::InsufficientPrecision { needed, known }) => {
                w += (needed - known).max(1) + 2;
                continue;
            }
            r => r?,
        };
        if r.precision() >= n {
            return Ok(r.truncate(n));
        }
        w += (n - r.precision()) + 2;
    }
    Err(Error::InsufficientPrecision { needed: n, known: w })
}

fn eval_ratfunc(r: &RatFunc, x: &LaurentSeries) -> Result<LaurentSeries> {
    let num = x.eval_poly(r.num());
    if num.is_zero() && num.is_exact() {
        return Ok(num);
    }
    num.div(&x.eval_poly(r.den()))
}

fn eval_element(g: &FunctionFieldElement, c: &LocalCoordinates) -> Result<LaurentSeries> {
    let a = eval_ratfunc(g.even(), &c.x)?;
    if g.odd().is_zero() {
        return Ok(a);
    }
    let y = c.y.as_ref().ok_or_else(|| Error::InvalidCurve("y on the projective line".into()))?;
    Ok(a.add(&eval_ratfunc(g.odd(), &c.x)?.mul(y)))
}

/// Laurent expansion of a function at a place, to absolute precision `n`.
pub fn expand(g: &FunctionFieldElement, place: &Arc<Place>, n: i64) -> Result<LaurentSeries> {
    check_curve(g, place)?;
    if g.is_zero() {
        return Ok(LaurentSeries::zero(place, n));
    }
    adaptive(place, n, |c| eval_element(g, c))
}

/// Expansion of `g dx` as `h(t) dt`; returns `h` to absolute precision `n`.
pub fn expand_differential(g: &FunctionFieldElement, place: &Arc<Place>, n: i64) -> Result<LaurentSeries> {
    check_curve(g, place)?;
    if g.is_zero() {
        return Ok(LaurentSeries::zero(place, n));
    }
    adaptive(place, n, |c| Ok(eval_element(g, c)?.mul(&c.x.derivative())))
}

/// `dx/dt` at the place, to precision `n`.
pub fn dx_dt(place: &Arc<Place>, n: i64) -> Result<LaurentSeries> {
    adaptive(place, n, |c| Ok(c.x.derivative()))
}

fn check_curve(g: &FunctionFieldElement, place: &Arc<Place>) -> Result<()> {
    if **g.curve() != **place.curve() {
        return Err(Error::FieldMismatch("element and place live on different curves".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BaseField;
    use crate::curve::{legendre_elliptic, linear_center, order_at, places_over, CurveModel, PlaceRegistry};

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn curve_x3_plus_1() -> crate::curve::Curve {
        CurveModel::hyperelliptic(Poly::from_ints(&q(), &[1, 0, 0, 1])).unwrap()
    }

    #[test]
    fn split_place_expansion() {
        let c = curve_x3_plus_1();
        let places = places_over(&c, &linear_center(&c, 2)).unwrap();
        assert_eq!(places.len(), 2);
        let ys: Vec<_> = places.iter().map(|p| p.y0().unwrap().as_base().unwrap()).collect();
        assert!(ys.contains(&q().int(3)) && ys.contains(&q().int(-3)));
        let p = places.iter().find(|p| p.y0().unwrap().as_base() == Some(q().int(3))).unwrap();
        let y = expand(&FunctionFieldElement::y(&c).unwrap(), p, 3).unwrap();
        // y = 3 + 2 t + (f''/2 - (2)^2) t^2 / 6 ... check via y^2 = f(2 + t)
        assert_eq!(y.coeff(0).unwrap().as_base(), Some(q().int(3)));
        assert_eq!(y.coeff(1).unwrap().as_base(), Some(q().int(2)));
        let x = expand(&FunctionFieldElement::x(&c), p, 8).unwrap();
        let y8 = expand(&FunctionFieldElement::y(&c).unwrap(), p, 8).unwrap();
        let f = c.f().unwrap();
        assert!(y8.mul(&y8).sub(&x.eval_poly(f)).is_zero());
    }

    #[test]
    fn infinity_expansion_satisfies_the_equation() {
        for curve in [legendre_elliptic(q()), crate::curve::genus_two_example(q()).unwrap()] {
            let inf = PlaceRegistry::new(&curve).infinity()[0].clone();
            let x = expand(&FunctionFieldElement::x(&curve), &inf, 10).unwrap();
            let y = expand(&FunctionFieldElement::y(&curve).unwrap(), &inf, 10).unwrap();
            assert_eq!(x.order(), Some(-2));
            assert_eq!(y.order(), Some(-(curve.deg_f() as i64)));
            let lhs = y.mul(&y);
            let rhs = x.eval_poly(curve.f().unwrap());
            assert!(lhs.sub(&rhs).is_zero());
            let t = expand(inf.uniformizer(), &inf, 10).unwrap();
            assert!(t.sub(&LaurentSeries::t(&inf, 10)).is_zero());
        }
    }

    #[test]
    fn uniformizers_have_order_one() {
        let c = legendre_elliptic(q());
        let reg = PlaceRegistry::new(&c);
        let centers = [
            Center::Finite(Poly::from_ints(&q(), &[0, 1])),
            Center::Finite(Poly::from_ints(&q(), &[-2, 1])),
            Center::Finite(Poly::from_ints(&q(), &[1, 0, 1])),
            Center::Infinity,
        ];
        for center in &centers {
            for p in reg.places_over(center).unwrap() {
                assert_eq!(order_at(p.uniformizer(), &p).unwrap(), Some(1), "at {}", p.id());
                let t = expand(p.uniformizer(), &p, 6).unwrap();
                assert!(t.sub(&LaurentSeries::t(&p, 6)).is_zero(), "at {}", p.id());
            }
        }
    }

    #[test]
    fn branch_types_on_the_legendre_curve() {
        let c = legendre_elliptic(q());
        let reg = PlaceRegistry::new(&c);
        let over = |cs: &[i64]| reg.places_over(&Center::Finite(Poly::from_ints(&q(), cs))).unwrap();
        assert_eq!(over(&[0, 1])[0].branch(), Branch::Ramified);
        let inert = over(&[-2, 1]);
        assert_eq!((inert.len(), inert[0].branch(), inert[0].residue_degree()), (1, Branch::Inert, 2));
        // f(i) = -2i = (1 - i)^2
        let split = over(&[1, 0, 1]);
        assert_eq!(split.len(), 2);
        assert!(split.iter().all(|p| p.residue_degree() == 2));
    }

    #[test]
    fn projective_line_places() {
        let c = CurveModel::projective_line(q());
        let reg = PlaceRegistry::new(&c);
        let p = reg.places_over(&Center::Finite(Poly::from_ints(&q(), &[2, 0, 1]))).unwrap();
        assert_eq!(p[0].residue_degree(), 2);
        let x = expand(&FunctionFieldElement::x(&c), &p[0], 5).unwrap();
        let pi = Poly::from_ints(&q(), &[2, 0, 1]);
        assert!(x.eval_poly(&pi).sub(&LaurentSeries::t(&p[0], 5)).is_zero());
        assert!(reg.places_over(&Center::Finite(Poly::from_ints(&q(), &[-1, 0, 1]))).is_err());
    }

    #[test]
    fn split_place_over_f5_matches_brute_force() {
        // search all (y0, y1, y2) in F_5^3 with (y0 + y1 t + y2 t^2)^2 = f(2 + t) mod t^3
        let k = BaseField::Prime(5);
        let c = legendre_elliptic(k);
        let f = c.f().unwrap();
        let shifted = f.compose(&Poly::from_ints(&k, &[2, 1]));
        let mut roots = Vec::new();
        for y0 in 0..5i64 {
            for y1 in 0..5i64 {
                for y2 in 0..5i64 {
                    let y: Poly<Scalar> = Poly::from_ints(&k, &[y0, y1, y2]);
                    let sq = y.mul(&y);
                    if (0..3).all(|i| sq.coeff(i) == shifted.coeff(i)) {
                        roots.push((y0, y1, y2));
                    }
                }
            }
        }
        let place = places_over(&c, &linear_center(&c, 2))
            .unwrap()
            .into_iter()
            .find(|p| p.y0().unwrap().as_base() == Some(k.int(1)))
            .unwrap();
        let y = expand(&FunctionFieldElement::y(&c).unwrap(), &place, 3).unwrap();
        let coeff = |e| match y.coeff(e).unwrap().as_base().unwrap() {
            Scalar::Prime(a) => a.value() as i64,
            _ => unreachable!(),
        };
        let found = (coeff(0), coeff(1), coeff(2));
        assert_eq!(found.1, 3);
        assert!(roots.contains(&found) && roots.len() == 2);
    }

    #[test]
    fn cancelling_denominator_at_ramified_place() {
        // (x^3 - 1)^2 vanishes to order 4 at the ramified place over x = 1 in characteristic 5
        let c = legendre_elliptic(BaseField::Prime(5));
        let place = places_over(&c, &linear_center(&c, 1)).unwrap().remove(0);
        let x = FunctionFieldElement::x(&c);
        let one = FunctionFieldElement::one(&c);
        let d = x.pow(3).unwrap().sub(&one);
        let g = d.mul(&d).inv().unwrap();
        let s = expand(&g, &place, 0).unwrap();
        assert_eq!(s.order(), Some(-4));
    }
}
