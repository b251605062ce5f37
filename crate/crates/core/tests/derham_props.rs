use adelic::adele::random::{random_function, random_nonzero_function};
use adelic::arith::{BaseField, Field, Scalar};
use adelic::curve::{genus_two_example, legendre_elliptic, Curve};
use adelic::derham::{canonical_basis, cartier, reduce_to_basis, DifferentialKind, RationalDifferential};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn characteristic_zero_curves() -> Vec<Curve> {
    vec![legendre_elliptic(BaseField::Rationals), genus_two_example(BaseField::Rationals).unwrap()]
}

fn random_combination(curve: &Curve, rng: &mut ChaCha8Rng, count: usize) -> (Vec<Scalar>, RationalDifferential) {
    let basis = canonical_basis(curve).unwrap();
    let coords: Vec<Scalar> = basis.iter().take(count).map(|_| curve.base().int(rng.gen_range(-5..=5))).collect();
    let mut w = RationalDifferential::zero(curve);
    for (c, b) in coords.iter().zip(&basis) {
        w = w.add(&b.scale(c));
    }
    let mut full = coords.clone();
    full.resize(basis.len(), curve.base().zero());
    (full, w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn reduction_ignores_exact_perturbations(i in 0usize..2, seed in any::<u64>()) {
        let curve = &characteristic_zero_curves()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (coords, w) = random_combination(curve, &mut rng, usize::MAX);
        let g = random_function(curve, &mut rng);
        let perturbed = w.add(&RationalDifferential::exact(&g));
        let r = reduce_to_basis(&perturbed).unwrap();
        prop_assert_eq!(&r.class.coordinates, &coords);
        prop_assert_eq!(&r.class, &reduce_to_basis(&w).unwrap().class);
        let rest = perturbed.sub(&r.class.representative(curve).unwrap());
        prop_assert!(rest.sub(&RationalDifferential::exact(&r.witness)).is_zero());
    }

    #[test]
    fn first_kind_forms_reduce_into_the_hodge_part(i in 0usize..2, seed in any::<u64>()) {
        let curve = &characteristic_zero_curves()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, w) = random_combination(curve, &mut rng, curve.genus());
        prop_assume!(!w.is_zero());
        prop_assert_eq!(w.classify().unwrap(), DifferentialKind::FirstKind);
        let r = reduce_to_basis(&w).unwrap();
        prop_assert!(r.class.coordinates[curve.genus()..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn cartier_is_additive_and_semilinear(p in prop::sample::select(vec![3u64, 5, 7]), seed in any::<u64>()) {
        let curve = legendre_elliptic(BaseField::Prime(p));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = RationalDifferential::new(random_function(&curve, &mut rng));
        let b = RationalDifferential::new(random_function(&curve, &mut rng));
        let v = random_nonzero_function(&curve, &mut rng);
        let ca = cartier(&a).unwrap();
        prop_assert!(cartier(&a.add(&b)).unwrap().sub(&ca.add(&cartier(&b).unwrap())).is_zero());
        let vp = v.pow(p as i64).unwrap();
        prop_assert!(cartier(&a.mul_function(&vp)).unwrap().sub(&ca.mul_function(&v)).is_zero());
        prop_assert!(cartier(&RationalDifferential::exact(&v)).unwrap().is_zero());
    }
}
