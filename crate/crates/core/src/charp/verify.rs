//! The Deligne-Illusie verification suite: lift validity, `D(f + h) = 0`, the coboundary
//! identity for coordinates, and independence of the lift choices at the level of pairings.

use serde::Serialize;
use serde_json::Value;

use super::lift::{Coordinate, LiftFamily, LiftedCurve};
use super::psi::{coboundary_defect, lemma_defects, psi};
use crate::adele::serialize::adele0_json;
use crate::adele::{cocycle_from_second_kind, AdeleContext, Ctx};
use crate::curve::{Curve, FunctionFieldElement};
use crate::derham::{canonical_basis, RationalDifferential};
use crate::error::{Error, Result};
use crate::report::Check;

#[derive(Clone, Serialize, Debug)]
pub struct QuasiIsoReport {
    pub characteristic: u64,
    pub precision: i64,
    pub families: Vec<Value>,
    pub test_forms: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
    /// Some check failed only because a truncation was too short.
    #[serde(skip)]
    pub precision_exhausted: bool,
}

#[derive(Default)]
struct Checks {
    list: Vec<Check>,
    short: bool,
}

impl Checks {
    fn push(&mut self, c: Check) {
        self.list.push(c);
    }

    fn fail(&mut self, name: String, e: &Error) {
        self.short |= matches!(e, Error::InsufficientPrecision { .. });
        self.list.push(Check::new(name, false).with_detail(e.to_string()));
    }
}

/// Forms on which `psi` is compared: the holomorphic basis and `dx`, `dy`.
pub fn default_test_forms(curve: &Curve) -> Result<Vec<RationalDifferential>> {
    let mut out: Vec<RationalDifferential> = canonical_basis(curve)?.into_iter().take(curve.genus()).collect();
    out.push(RationalDifferential::dx(curve));
    if curve.is_hyperelliptic() {
        out.push(RationalDifferential::exact(&FunctionFieldElement::y(curve)?));
    }
    Ok(out)
}

fn coordinates(curve: &Curve) -> Vec<Coordinate> {
    if curve.is_hyperelliptic() {
        vec![Coordinate::X, Coordinate::Y]
    } else {
        vec![Coordinate::X]
    }
}

fn family_checks(ctx: &Ctx, label: &str, family: &LiftFamily, checks: &mut Checks) {
    let lifted = family.lifted();
    for lift in family.lifts() {
        let scope = match lift.scope() {
            super::lift::LiftScope::Generic => "generic".to_string(),
            super::lift::LiftScope::AtPlace(id) => id.to_string(),
        };
        let name = format!("{label}/lift/{scope}");
        match lift.verify(lifted) {
            Ok(()) => checks.push(Check::new(name, lifted.reduces_to_base())),
            Err(e) => checks.fail(name, &e),
        }
    }
    match lemma_defects(ctx, family) {
        Ok(chains) => {
            for (chain, ok) in chains {
                let chain = chain.map_or("(gen, x) default".to_string(), |c| format!("(gen, {c})"));
                checks.push(Check::new(format!("{label}/D(f+h)=0/{chain}"), ok));
            }
        }
        Err(e) => checks.fail(format!("{label}/D(f+h)=0"), &e),
    }
    for coord in coordinates(ctx.curve()) {
        let name = format!("{label}/psi(d{0})-{0}^(p-1)d{0}=Du", coord.name());
        match coboundary_defect(ctx, family, coord) {
            Ok((defect, u)) => {
                checks.push(Check::new(name, defect.is_zero()).with_witness(adele0_json(&u)));
            }
            Err(e) => checks.fail(name, &e),
        }
    }
}

/// Runs every check for two lift families over the same lifted curve. Failures are recorded
/// as failing checks with their error message rather than aborting the run.
pub fn verify_quasi_iso(
    ctx: &Ctx,
    family_a: &LiftFamily,
    family_b: &LiftFamily,
    test_forms: &[RationalDifferential],
) -> Result<QuasiIsoReport> {
    let curve = ctx.curve();
    let mut checks = Checks::default();
    family_checks(ctx, "A", family_a, &mut checks);
    family_checks(ctx, "B", family_b, &mut checks);
    let basis = canonical_basis(curve)?;
    let cocycles: Vec<_> = basis.iter().map(|b| cocycle_from_second_kind(ctx, b)).collect();
    for omega in test_forms {
        let images = [psi(ctx, family_a, omega), psi(ctx, family_b, omega)];
        for (label, img) in ["A", "B"].iter().zip(&images) {
            let name = format!("{label}/psi({omega})/cocycle");
            match img {
                Ok(_) => checks.push(Check::new(name, true)),
                Err(e) => checks.fail(name, e),
            }
        }
        let [Ok(psi_a), Ok(psi_b)] = &images else { continue };
        for (b, beta) in basis.iter().zip(&cocycles) {
            let name = format!("pairing/psi({omega})/{b}");
            let beta = match beta {
                Ok(beta) => beta,
                Err(e) => {
                    checks.fail(name, e);
                    continue;
                }
            };
            match (psi_a.pairing(beta), psi_b.pairing(beta)) {
                (Ok(va), Ok(vb)) => checks.push(Check::new(name, va == vb).with_detail(format!("A: {va}, B: {vb}"))),
                (Err(e), _) | (_, Err(e)) => checks.fail(name, &e),
            }
        }
    }
    let Checks { list: checks, short } = checks;
    let passed = checks.iter().all(Check::passed);
    Ok(QuasiIsoReport {
        characteristic: curve.characteristic(),
        precision: ctx.precision(),
        families: vec![family_a.to_json(), family_b.to_json()],
        test_forms: test_forms.iter().map(|w| w.to_string()).collect(),
        checks,
        passed,
        precision_exhausted: short,
    })
}

/// The full suite on a curve: two seeded lift families (`seed` and `seed + 1`), each with
/// `extra` perturbed lifts beyond the mandatory ones. Precision is doubled, up to three
/// times, while a check fails only for lack of it; the report records the final value.
pub fn di_check(curve: &Curve, seed: u64, precision: i64, extra: usize) -> Result<QuasiIsoReport> {
    let p = curve.characteristic();
    if p == 0 {
        return Err(Error::NotCharacteristicP);
    }
    if p == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    let lifted = LiftedCurve::new(curve)?;
    let forms = default_test_forms(curve)?;
    let mut n = precision;
    let mut rounds = 0;
    loop {
        let ctx = AdeleContext::new(curve, n);
        let a = LiftFamily::generate(&ctx, &lifted, seed, extra)?;
        let b = LiftFamily::generate(&ctx, &lifted, seed.wrapping_add(1), extra)?;
        let r = verify_quasi_iso(&ctx, &a, &b, &forms)?;
        if !r.precision_exhausted || rounds == 3 {
            return Ok(r);
        }
        n *= 2;
        rounds += 1;
    }
}
