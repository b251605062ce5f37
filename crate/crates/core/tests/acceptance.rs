//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line; the process exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use adelic::adele::random::{random_closed_01, random_function, random_genuine_adele0, random_mixed, random_nonzero_function};
use adelic::adele::{cocycle_from_second_kind, diagonal_cocycle, try_coboundary_01, AdeleContext, Form, MixedAdele};
use adelic::arith::{BaseField, Field, Poly};
use adelic::charp::di_check;
use adelic::curve::{genus_two_example, legendre_elliptic, Curve, CurveModel, FunctionFieldElement, PlaceRegistry};
use adelic::derham::{canonical_basis, cartier, cartier_inverse, DifferentialKind, RationalDifferential};
use adelic::report;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q() -> BaseField {
    BaseField::Rationals
}

fn elliptic_q() -> Curve {
    legendre_elliptic(q())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn de_rham_dimensions() -> Outcome {
    let mut out = Vec::new();
    for (coeffs, label) in [(&[0, -1, 0, 1][..], "deg 3"), (&[0, -1, 0, 0, 0, 1][..], "deg 5")] {
        let curve = CurveModel::hyperelliptic(Poly::from_ints(&q(), coeffs)).map_err(|e| e.to_string())?;
        // Riemann-Hurwitz for the double cover x: y^2 = f, deg f = d: g = floor((d - 1) / 2)
        let g = (coeffs.len() - 2) / 2;
        let r = report::h1dr(&curve, 8).map_err(|e| e.to_string())?;
        let dim = r.result["h1dr_dimension"].as_u64().unwrap_or(u64::MAX) as usize;
        let hodge = r.result["hodge_dimension"].as_u64().unwrap_or(u64::MAX) as usize;
        ensure(r.passed, format!("{label}: h1dr checks failed"))?;
        ensure(dim == 2 * g && hodge == g, format!("{label}: got ({dim}, {hodge}), expected ({}, {g})", 2 * g))?;
        out.push(format!("{label}: dim {dim}, Hodge {hodge}"));
    }
    Ok(out.join("; "))
}

fn residue_theorem() -> Outcome {
    let curves = [
        ("P1/Q", CurveModel::projective_line(q())),
        ("E/Q", elliptic_q()),
        ("E/F5", legendre_elliptic(BaseField::Prime(5))),
    ];
    for (label, curve) in curves {
        let reg = PlaceRegistry::new(&curve);
        let mut r = rng(2);
        for i in 0..100 {
            let w = RationalDifferential::new(random_function(&curve, &mut r));
            let sum = w.residue_sum(&reg).map_err(|e| format!("{label} form {i}: {e}"))?;
            ensure(sum.is_zero(), format!("{label} form {i} ({w}): sum {sum}"))?;
        }
    }
    Ok("100 forms on each of P1/Q, E/Q, E/F5".into())
}

fn complex_axioms() -> Outcome {
    let curve = elliptic_q();
    let ctx = AdeleContext::new(&curve, 6);
    let mut r = rng(3);
    for i in 0..100 {
        let a = random_mixed(&ctx, &mut r).map_err(|e| e.to_string())?;
        let dp = a.d_prime();
        let dpp = a.d_double_prime().map_err(|e| e.to_string())?;
        ensure(dp.d_prime().is_zero(), format!("sample {i}: D'^2 != 0"))?;
        ensure(dpp.d_double_prime().map_err(|e| e.to_string())?.is_zero(), format!("sample {i}: D''^2 != 0"))?;
        let anti = dp.d_double_prime().and_then(|x| x.add(&dpp.d_prime())).map_err(|e| e.to_string())?;
        ensure(anti.is_zero(), format!("sample {i}: D'D'' + D''D' != 0"))?;
        let degree_one = MixedAdele::zero(&ctx).with_10(a.a10.clone()).with_01(a.a01.clone());
        let total = degree_one.d().and_then(|x| x.integrate()).map_err(|e| e.to_string())?;
        ensure(total.is_zero(), format!("sample {i}: integral of D a is {total}"))?;
    }
    Ok("100 random adeles on E/Q".into())
}

fn isotropy_and_descent() -> Outcome {
    let g2 = genus_two_example(q()).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for curve in [elliptic_q(), g2] {
        let ctx = AdeleContext::new(&curve, 8);
        let first: Vec<_> = canonical_basis(&curve)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|w| w.classify() == Ok(DifferentialKind::FirstKind))
            .map(|w| diagonal_cocycle(&ctx, &w))
            .collect();
        for a in &first {
            ensure(a.is_cocycle() == Ok(true), "first-kind diagonal is not a cocycle")?;
            for b in &first {
                let v = a.pairing(b).map_err(|e| e.to_string())?;
                ensure(v.is_zero(), format!("first-kind pairing {v}"))?;
                pairs += 1;
            }
        }
    }
    let curve = elliptic_q();
    // random coboundaries carry poles of order up to 11 at infinity
    let ctx = AdeleContext::new(&curve, 16);
    let basis = canonical_basis(&curve).map_err(|e| e.to_string())?;
    let alpha = cocycle_from_second_kind(&ctx, &basis[0]).map_err(|e| e.to_string())?;
    let beta = cocycle_from_second_kind(&ctx, &basis[1]).map_err(|e| e.to_string())?;
    let base = alpha.pairing(&beta).map_err(|e| e.to_string())?;
    let mut r = rng(4);
    for i in 0..50 {
        let b = random_genuine_adele0(&ctx, Form::Function, &mut r).map_err(|e| e.to_string())?;
        let db = MixedAdele::zero(&ctx).with_00(b).d().map_err(|e| e.to_string())?;
        let (a2, b2) = if i % 2 == 0 {
            (alpha.add(&db).map_err(|e| e.to_string())?, beta.clone())
        } else {
            (alpha.clone(), beta.add(&db).map_err(|e| e.to_string())?)
        };
        ensure(a2.is_cocycle() == Ok(true) && b2.is_cocycle() == Ok(true), format!("perturbation {i} broke the cocycle"))?;
        let v = a2.pairing(&b2).map_err(|e| e.to_string())?;
        ensure(v == base, format!("perturbation {i}: {v} != {base}"))?;
    }
    Ok(format!("{pairs} first-kind pairs vanish; pairing {base} stable under 50 coboundaries"))
}

fn example_one() -> Outcome {
    let curve = elliptic_q();
    let ctx = AdeleContext::new(&curve, 6);
    let mut r = rng(5);
    for i in 0..30 {
        let beta = random_closed_01(&ctx, &mut r).map_err(|e| e.to_string())?;
        let w = try_coboundary_01(&ctx, &beta)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("sample {i}: no witness"))?;
        let dw = MixedAdele::zero(&ctx).with_00(w).d().map_err(|e| e.to_string())?;
        let target = MixedAdele::zero(&ctx).with_01(beta);
        ensure(dw.agrees_with(&target) == Ok(true), format!("sample {i}: D(witness) != beta"))?;
    }
    let h1dr = report::h1dr(&curve, 8).map_err(|e| e.to_string())?;
    let dim = h1dr.result["h1dr_dimension"].as_u64().unwrap_or(0);
    let h10 = h1dr.result["hodge_dimension"].as_u64().unwrap_or(0);
    // every sampled closed (0,1)-class died, so it contributes nothing
    let h01 = 0;
    ensure(h10 + h01 < dim, format!("{h10} + {h01} is not below {dim}"))?;
    Ok(format!("30 witnesses; dim H10 + H01 = {} < {dim}", h10 + h01))
}

/// Truncated power series in `s` with rational coefficients, `c[i]` the coefficient of `s^(i + start)`.
#[derive(Clone)]
struct Series {
    start: i64,
    c: Vec<BigRational>,
}

impl Series {
    fn mul(&self, o: &Series, len: usize) -> Series {
        let mut c = vec![BigRational::zero(); len];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                if i + j < len {
                    c[i + j] += a * b;
                }
            }
        }
        Series { start: self.start + o.start, c }
    }

    fn integrate(&self) -> Series {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let e = i as i64 + self.start + 1;
                assert!(e != 0 || a.is_zero(), "log term");
                if e == 0 {
                    BigRational::zero()
                } else {
                    a / BigRational::from_integer(e.into())
                }
            })
            .collect();
        Series { start: self.start + 1, c }
    }

    fn coeff(&self, e: i64) -> BigRational {
        usize::try_from(e - self.start).ok().and_then(|i| self.c.get(i).cloned()).unwrap_or_else(BigRational::zero)
    }
}

/// Residue pairing of `dx/y` and `x dx/y` on `y^2 = x^3 - x`, computed at the only pole of
/// `x dx/y` (the point at infinity) as `Res(x dx/y * integral of dx/y)`.
///
/// With `x = s^-2`, `y = s^-3 (1 - s^4)^(1/2)`: `dx/y = -2 A ds`, `x dx/y = -2 s^-2 A ds`,
/// `A = (1 - s^4)^(-1/2) = sum binom(2k, k) / 4^k s^(4k)`. Flipping the branch of the square
/// root negates both forms and leaves the residue unchanged.
fn pairing_oracle() -> BigRational {
    let len = 16;
    let mut a = vec![BigRational::zero(); len];
    let mut coef = BigRational::one();
    for k in 0..len / 4 {
        a[4 * k] = coef.clone();
        // binom(2k+2, k+1) / 4^(k+1) = binom(2k, k) / 4^k * (2k + 1) / (2k + 2)
        coef = coef * BigRational::new((2 * k as i64 + 1).into(), (2 * k as i64 + 2).into());
    }
    let minus_two = BigRational::from_integer((-2).into());
    let a = Series { start: 0, c: a };
    let omega1 = Series { start: 0, c: a.c.iter().map(|v| v * &minus_two).collect() };
    let omega2 = Series { start: -2, c: omega1.c.clone() };
    let g = omega1.integrate();
    g.mul(&omega2, len).coeff(-1)
}

fn explicit_cocycle() -> Outcome {
    let golden = pairing_oracle();
    let golden_scalar = q().parse(&golden.to_string()).map_err(|e| e.to_string())?;
    let curve = elliptic_q();
    let ctx = AdeleContext::new(&curve, 10);
    let x = FunctionFieldElement::x(&curve);
    let y = FunctionFieldElement::y(&curve).map_err(|e| e.to_string())?;
    let dx_y = RationalDifferential::new(y.inv().map_err(|e| e.to_string())?);
    let x_dx_y = RationalDifferential::new(x.div(&y).map_err(|e| e.to_string())?);
    let alpha = cocycle_from_second_kind(&ctx, &dx_y).map_err(|e| e.to_string())?;
    let beta = cocycle_from_second_kind(&ctx, &x_dx_y).map_err(|e| e.to_string())?;
    ensure(beta.is_cocycle() == Ok(true), "beta is not a cocycle")?;
    let v = alpha.pairing(&beta).map_err(|e| e.to_string())?;
    ensure(!golden.is_zero() && v == golden_scalar, format!("pairing {v}, oracle {golden}"))?;
    let inv = v.inv().map_err(|e| e.to_string())?;
    let unit = alpha.pairing(&beta.scale(&inv)).map_err(|e| e.to_string())?;
    ensure(unit.is_one(), format!("rescaled pairing {unit}"))?;
    Ok(format!("pairing {v} = oracle {golden}; rescaled pairing 1"))
}

fn cartier_suite() -> Outcome {
    for p in [3u64, 5, 7] {
        let curve = legendre_elliptic(BaseField::Prime(p));
        let mut r = rng(7 + p);
        for i in 0..50 {
            let w = RationalDifferential::new(random_function(&curve, &mut r));
            let back = cartier_inverse(&w).and_then(|c| cartier(&c)).map_err(|e| format!("p = {p}, form {i}: {e}"))?;
            ensure(back.sub(&w).is_zero(), format!("p = {p}, form {i}: C(C^-1 w) != w"))?;
        }
        for i in 0..50 {
            let g = random_nonzero_function(&curve, &mut r);
            let dg = RationalDifferential::exact(&g);
            let lhs = g
                .pow(p as i64 - 1)
                .and_then(|gp| cartier(&dg.mul_function(&gp)))
                .map_err(|e| format!("p = {p}, g {i}: {e}"))?;
            ensure(lhs.sub(&dg).is_zero(), format!("p = {p}, g {i}: C(g^(p-1) dg) != dg"))?;
        }
    }
    Ok("50 round trips and 50 log-forms for each p in {3, 5, 7}".into())
}

fn deligne_illusie() -> Outcome {
    let cases = [
        ("P1/F3", CurveModel::projective_line(BaseField::Prime(3)), 12, vec!["x"]),
        ("E/F5", legendre_elliptic(BaseField::Prime(5)), 16, vec!["x", "y"]),
    ];
    let mut out = Vec::new();
    for (label, curve, prec, coords) in cases {
        let r = di_check(&curve, 8, prec, 2).map_err(|e| format!("{label}: {e}"))?;
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed()).map(|c| c.name.clone()).collect();
        ensure(failed.is_empty(), format!("{label}: failing {failed:?}"))?;
        let count = |pat: &str| r.checks.iter().filter(|c| c.name.contains(pat)).count();
        for fam in ["A", "B"] {
            ensure(count(&format!("{fam}/D(f+h)=0/")) >= 2, format!("{label}: family {fam} has no chain checks"))?;
            for a in &coords {
                let name = format!("{fam}/psi(d{a})-{a}^(p-1)d{a}=Du");
                let c = r.checks.iter().find(|c| c.name == name).ok_or(format!("{label}: missing {name}"))?;
                ensure(c.witness.is_some(), format!("{label}: {name} has no witness"))?;
            }
        }
        ensure(count("pairing/") >= 1 || curve.genus() == 0, format!("{label}: no pairing comparisons"))?;
        out.push(format!("{label}: {} checks", r.checks.len()));
    }
    Ok(out.join("; "))
}

fn determinism() -> Outcome {
    let e5 = legendre_elliptic(BaseField::Prime(5));
    let eq = elliptic_q();
    let runs: [(&str, Box<dyn Fn() -> adelic::Result<report::Report>>); 4] = [
        ("di-check", Box::new(|| report::di_check(&e5, 3, 16))),
        ("example1", Box::new(|| report::example1(&eq, 10, 3, 8))),
        ("residues", Box::new(|| report::residues(&e5, None, 20, 3))),
        ("cartier", Box::new(|| report::cartier_suite(&e5, None, 20, 3))),
    ];
    for (label, run) in &runs {
        let a = run().map_err(|e| format!("{label}: {e}"))?.to_json();
        let b = run().map_err(|e| format!("{label}: {e}"))?.to_json();
        ensure(a == b, format!("{label}: reports differ"))?;
    }
    Ok("di-check, example1, residues, cartier reports byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("de Rham dimensions", de_rham_dimensions),
        ("residue theorem", residue_theorem),
        ("complex axioms", complex_axioms),
        ("isotropy and descent", isotropy_and_descent),
        ("closed (0,1)-adeles are coboundaries", example_one),
        ("explicit second-kind cocycle", explicit_cocycle),
        ("Cartier operator", cartier_suite),
        ("Frobenius lifts and psi", deligne_illusie),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
