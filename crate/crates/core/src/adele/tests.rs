use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::{random_genuine_adele0, random_mixed, random_adele1, random_closed_01};
use super::*;
use crate::arith::{BaseField, Field, Poly};
use crate::curve::{legendre_elliptic, linear_center, CurveModel, FunctionFieldElement};
use crate::derham::RationalDifferential;
use crate::laurent::LaurentSeries;

fn q() -> BaseField {
    BaseField::Rationals
}

fn deg1(ctx: &Ctx, a: &MixedAdele) -> MixedAdele {
    MixedAdele::zero(ctx).with_10(a.a10.clone()).with_01(a.a01.clone())
}

#[test]
fn coboundary_convention_on_the_line() {
    let c = CurveModel::projective_line(q());
    let ctx = AdeleContext::new(&c, 6);
    let x = FunctionFieldElement::x(&c);
    let u = Adele0 {
        form: Form::Function,
        generic: x.inv().unwrap(),
        point_default: FunctionFieldElement::zero(&c),
        point_exceptions: Default::default(),
    };
    let du = MixedAdele::zero(&ctx).with_00(u).d_double_prime().unwrap();
    let p0 = ctx.registry().places_over(&linear_center(&c, 0)).unwrap()[0].clone();
    let comp = du.a01.chain_component(&ctx, &p0).unwrap();
    assert!(comp.sub(&LaurentSeries::t(&p0, 6).inv().unwrap()).is_zero());
    let g = x.add(&FunctionFieldElement::one(&c));
    let diag = MixedAdele::zero(&ctx).with_00(Adele0::diagonal(Form::Function, &g));
    assert!(diag.d_double_prime().unwrap().is_zero());
}

#[test]
fn complex_axioms_on_random_adeles() {
    let c = legendre_elliptic(q());
    let ctx = AdeleContext::new(&c, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let a = random_mixed(&ctx, &mut rng).unwrap();
        assert!(a.d_prime().d_prime().is_zero());
        assert!(a.d_double_prime().unwrap().d_double_prime().unwrap().is_zero());
        let anti = a.d_prime().d_double_prime().unwrap().add(&a.d_double_prime().unwrap().d_prime()).unwrap();
        assert!(anti.is_zero());
        assert!(a.d().unwrap().d().unwrap().is_zero());
        let b = deg1(&ctx, &a);
        assert!(b.d().unwrap().integrate().unwrap().is_zero());
    }
}

#[test]
fn leibniz_rule() {
    let c = legendre_elliptic(q());
    let ctx = AdeleContext::new(&c, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let a = MixedAdele::zero(&ctx).with_00(random_genuine_adele0(&ctx, Form::Function, &mut rng).unwrap());
        let b = deg1(&ctx, &random_mixed(&ctx, &mut rng).unwrap());
        for (x, y, sign) in [(&a, &b, 1i64), (&b, &a, -1)] {
            let lhs = x.cup(y).unwrap().d().unwrap();
            let rhs = x
                .d()
                .unwrap()
                .cup(y)
                .unwrap()
                .add(&x.cup(&y.d().unwrap()).unwrap().scale(&q().int(sign)))
                .unwrap();
            assert!(lhs.agrees_with(&rhs).unwrap());
        }
    }
}

#[test]
fn unit_is_neutral() {
    let c = legendre_elliptic(q());
    let ctx = AdeleContext::new(&c, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_mixed(&ctx, &mut rng).unwrap();
    let one = MixedAdele::unit(&ctx);
    assert!(one.cup(&a).unwrap().agrees_with(&a).unwrap());
    assert!(a.cup(&one).unwrap().agrees_with(&a).unwrap());
    let w = MixedAdele::zero(&ctx).with_10(random_genuine_adele0(&ctx, Form::Differential, &mut rng).unwrap());
    assert!(w.cup(&w).unwrap().is_zero());
}

#[test]
fn integrate_log_form() {
    let c = CurveModel::projective_line(q());
    let ctx = AdeleContext::new(&c, 4);
    let p = ctx.registry().places_over(&linear_center(&c, 1)).unwrap()[0].clone();
    let dt_over_t = LaurentSeries::monomial(&p, crate::arith::ExtElement::one(p.residue_field()), -1, 4);
    let a = MixedAdele::zero(&ctx).with_11(Adele1::zero(&c, Form::Differential).with_exception(dt_over_t));
    assert_eq!(a.integrate().unwrap(), q().one());
    assert!(MixedAdele::zero(&ctx).integrate().unwrap().is_zero());
}

#[test]
fn second_kind_cocycles_and_pairing() {
    let c = legendre_elliptic(q());
    let ctx = AdeleContext::new(&c, 8);
    let omega = |i| RationalDifferential::basis_element(&c, i).unwrap();
    let alpha = cocycle_from_second_kind(&ctx, &omega(0)).unwrap();
    assert!(alpha.agrees_with(&diagonal_cocycle(&ctx, &omega(0))).unwrap());
    let beta = cocycle_from_second_kind(&ctx, &omega(1)).unwrap();
    assert!(alpha.pairing(&alpha).unwrap().is_zero());
    let v = alpha.pairing(&beta).unwrap();
    assert_eq!(v, q().int(4));
    assert_eq!(beta.pairing(&alpha).unwrap(), q().int(-4));
    let x = FunctionFieldElement::x(&c);
    let x2 = RationalDifferential::new(x.mul(&x).div(&FunctionFieldElement::y(&c).unwrap()).unwrap());
    let gamma = cocycle_from_second_kind(&ctx, &x2).unwrap();
    assert_eq!(gamma.a01.exceptions.len(), 1);
}

#[test]
fn closed_01_adeles_are_coboundaries() {
    let c = CurveModel::projective_line(q());
    let ctx = AdeleContext::new(&c, 4);
    let reg = ctx.registry();
    let p0 = reg.places_over(&linear_center(&c, 0)).unwrap()[0].clone();
    let p1 = reg.places_over(&linear_center(&c, 1)).unwrap()[0].clone();
    let k = |n| crate::arith::ExtElement::from_base(p0.residue_field(), q().int(n));
    let beta = Adele1::zero(&c, Form::Function)
        .with_exception(LaurentSeries::constant(&p0, k(3), 4))
        .with_exception(LaurentSeries::constant(&p1, k(-2), 4));
    let w = try_coboundary_01(&ctx, &beta).unwrap().unwrap();
    assert_eq!(w.point_exceptions[p0.id()].coeff(0).unwrap().as_base(), Some(q().int(-3)));
    assert_eq!(w.point_exceptions[p1.id()].coeff(0).unwrap().as_base(), Some(q().int(2)));
    let e = legendre_elliptic(q());
    let ectx = AdeleContext::new(&e, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let b = random_closed_01(&ectx, &mut rng).unwrap();
        assert!(try_coboundary_01(&ectx, &b).unwrap().is_some());
    }
    let open = random_adele1(&ectx, Form::Function, &mut rng).unwrap();
    assert!(try_coboundary_01(&ectx, &open).is_err());
    let _ = Poly::<crate::arith::Scalar>::zero(&q());
}
