use adelic::adele::random::{random_function, random_genuine_adele0};
use adelic::adele::{cocycle_from_second_kind, AdeleContext, Ctx, Form, MixedAdele};
use adelic::arith::{BaseField, ExtElement, Field, Scalar};
use adelic::curve::{genus_two_example, legendre_elliptic, Curve, PlaceRegistry};
use adelic::derham::{canonical_basis, default_precision, reduce_to_basis, RationalDifferential};
use adelic::report::gram_matrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn curves() -> Vec<Curve> {
    vec![legendre_elliptic(BaseField::Rationals), genus_two_example(BaseField::Rationals).unwrap()]
}

/// A random second-kind form: a combination of basis forms plus an exact form.
fn second_kind(curve: &Curve, rng: &mut ChaCha8Rng, exact: bool) -> RationalDifferential {
    let mut w = RationalDifferential::zero(curve);
    for b in canonical_basis(curve).unwrap() {
        w = w.add(&b.scale(&curve.base().int(rng.gen_range(-3..=3))));
    }
    if exact {
        w = w.add(&RationalDifferential::exact(&random_function(curve, rng)));
    }
    w
}

fn context(curve: &Curve, forms: &[&RationalDifferential], floor: i64) -> Ctx {
    let reg = PlaceRegistry::new(curve);
    let n = forms.iter().map(|w| default_precision(w, &reg).unwrap()).max().unwrap_or(0).max(floor);
    AdeleContext::new(curve, n)
}

fn coboundary(ctx: &Ctx, rng: &mut ChaCha8Rng) -> MixedAdele {
    let b = random_genuine_adele0(ctx, Form::Function, rng).unwrap();
    MixedAdele::zero(ctx).with_00(b).d().unwrap()
}

proptest! {
    // each case expands random coboundaries at precision 16, so keep the count low
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn pairing_is_skew_and_bilinear(i in 0usize..2, seed in any::<u64>()) {
        let curve = &curves()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w1 = second_kind(curve, &mut rng, false);
        let w2 = second_kind(curve, &mut rng, false);
        let w3 = second_kind(curve, &mut rng, false);
        // coboundaries of random adeles have poles of order up to 11 at infinity
        let ctx = context(curve, &[&w1, &w2, &w3], 16);
        let a = cocycle_from_second_kind(&ctx, &w1).unwrap().add(&coboundary(&ctx, &mut rng)).unwrap();
        let b = cocycle_from_second_kind(&ctx, &w2).unwrap().add(&coboundary(&ctx, &mut rng)).unwrap();
        let c = cocycle_from_second_kind(&ctx, &w3).unwrap();
        prop_assert_eq!(a.pairing(&b).unwrap(), b.pairing(&a).unwrap().neg());
        let k = curve.base().int(rng.gen_range(-4..=4));
        let lhs = a.scale(&k).add(&c).unwrap().pairing(&b).unwrap();
        let rhs = a.pairing(&b).unwrap().mul(&k).add(&c.pairing(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn pairing_matches_reduction_coordinates(i in 0usize..2, seed in any::<u64>()) {
        let curve = &curves()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = second_kind(curve, &mut rng, true);
        let ctx = context(curve, &[&w], 8);
        let (basis, gram) = gram_matrix(curve, 8).unwrap();
        let coords = reduce_to_basis(&w).unwrap().class.coordinates;
        let alpha = cocycle_from_second_kind(&ctx, &w).unwrap();
        for (j, b) in basis.iter().enumerate() {
            let beta = cocycle_from_second_kind(&ctx, b).unwrap();
            let expected = coords.iter().zip(&gram).fold(curve.base().zero(), |acc, (c, row): (&Scalar, _)| acc.add(&c.mul(&row[j])));
            prop_assert_eq!(alpha.pairing(&beta).unwrap(), expected);
        }
    }

    #[test]
    fn integration_constant_is_invisible(i in 0usize..2, seed in any::<u64>(), shift in -5i64..=5) {
        let curve = &curves()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = second_kind(curve, &mut rng, true);
        let ctx = context(curve, &[&w], 8);
        let alpha = cocycle_from_second_kind(&ctx, &w).unwrap();
        prop_assume!(!alpha.a01.exceptions.is_empty());
        let mut shifted = alpha.clone();
        for s in shifted.a01.exceptions.values_mut() {
            let c = ExtElement::from_base(s.field(), curve.base().int(shift));
            *s = s.add(&adelic::laurent::LaurentSeries::constant(s.place(), c, s.precision()));
        }
        prop_assert!(shifted.is_cocycle().unwrap());
        for b in canonical_basis(curve).unwrap() {
            let beta = cocycle_from_second_kind(&ctx, &b).unwrap();
            prop_assert_eq!(shifted.pairing(&beta).unwrap(), alpha.pairing(&beta).unwrap());
        }
    }
}
