//! Machine-readable reports for the command-line suites.
//!
//! A report is a single JSON document with the command, the curve spec, the seed, the working
//! precision, a `result` object and a `checks` array. Nothing time- or host-dependent is
//! recorded, so identical inputs give byte-identical output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::adele::random::{random_closed_01, random_function, random_nonzero_function};
use crate::adele::serialize::adele0_json;
use crate::adele::{cocycle_from_second_kind, try_coboundary_01, AdeleContext, Ctx};
use crate::arith::linalg::rank;
use crate::arith::{Field, Scalar};
use crate::charp;
use crate::curve::{Curve, CurveSpec, PlaceRegistry};
use crate::derham::{
    canonical_basis, cartier, cartier_inverse, default_precision, h1dr_dimension, hodge_dimension,
    reduce_to_basis, DifferentialKind, RationalDifferential,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Serialize, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Serialize, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: None, witness: None }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    /// A passing or failing check from a computation; errors become failures with the message.
    pub fn from_result(name: impl Into<String>, r: Result<bool>) -> Self {
        match r {
            Ok(ok) => Check::new(name, ok),
            Err(e) => Check::new(name, false).with_detail(e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub curve: CurveSpec,
    pub seed: u64,
    pub precision: i64,
    pub result: Value,
    pub warnings: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    fn new(command: &str, curve: &Curve, seed: u64, precision: i64, result: Value, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(Check::passed);
        Report {
            command: command.into(),
            curve: curve.to_spec(),
            seed,
            precision,
            result,
            warnings: Vec::new(),
            checks,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check, then the verdict.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} on {}\n", self.command, self.curve_line());
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => out.push_str(&format!("{tag} {} ({d})\n", c.name)),
                None => out.push_str(&format!("{tag} {}\n", c.name)),
            }
        }
        out.push_str(&format!("result: {}\n", self.result));
        out.push_str(if self.passed { "all checks passed\n" } else { "some checks failed\n" });
        out
    }

    fn curve_line(&self) -> String {
        serde_json::to_string(&self.curve).expect("spec serializes")
    }
}

fn context_for(curve: &Curve, forms: &[RationalDifferential], precision: i64) -> Result<Ctx> {
    let reg = PlaceRegistry::new(curve);
    let mut n = precision;
    for w in forms {
        n = n.max(default_precision(w, &reg)?);
    }
    Ok(AdeleContext::new(curve, n))
}

fn scalar_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

/// Pairing matrix of the canonical basis cocycles.
pub fn gram_matrix(curve: &Curve, precision: i64) -> Result<(Vec<RationalDifferential>, Vec<Vec<Scalar>>)> {
    let basis = canonical_basis(curve)?;
    let ctx = context_for(curve, &basis, precision)?;
    let cocycles = basis.iter().map(|b| cocycle_from_second_kind(&ctx, b)).collect::<Result<Vec<_>>>()?;
    let mut gram = Vec::new();
    for a in &cocycles {
        gram.push(cocycles.iter().map(|b| a.pairing(b)).collect::<Result<Vec<_>>>()?);
    }
    Ok((basis, gram))
}

/// `H^1_DR`: dimension as the rank of the pairing on the basis cocycles, Hodge dimension as the
/// number of holomorphic basis forms, and isotropy of the holomorphic part.
pub fn h1dr(curve: &Curve, precision: i64) -> Result<Report> {
    let g = curve.genus();
    let (basis, gram) = gram_matrix(curve, precision)?;
    let dim = rank(gram.clone());
    let reg = PlaceRegistry::new(curve);
    let mut holomorphic = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        if b.classify_with(&reg)? == DifferentialKind::FirstKind {
            holomorphic.push(i);
        }
    }
    let mut checks = vec![
        Check::new("dim H1_DR = 2g", dim == 2 * g && dim == h1dr_dimension(curve)).with_detail(format!("rank {dim}, genus {g}")),
        Check::new("Hodge dimension = g", holomorphic.len() == g && g == hodge_dimension(curve))
            .with_detail(format!("{} holomorphic basis forms", holomorphic.len())),
    ];
    let isotropic = holomorphic.iter().all(|&i| holomorphic.iter().all(|&j| gram[i][j].is_zero()));
    checks.push(Check::new("H^{1,0} is isotropic", isotropic));
    for (i, b) in basis.iter().enumerate() {
        let ok = reduce_to_basis(b).map(|r| {
            r.class.coordinates.iter().enumerate().all(|(j, c)| if i == j { c.is_one() } else { c.is_zero() })
        });
        checks.push(Check::from_result(format!("{b} reduces to basis vector {i}"), ok));
    }
    let result = json!({
        "genus": g,
        "h1dr_dimension": dim,
        "hodge_dimension": holomorphic.len(),
        "basis": basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "gram_matrix": gram.iter().map(|r| r.iter().map(scalar_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(Report::new("h1dr", curve, 0, precision, result, checks))
}

/// `<omega1, omega2>` via the cocycles of two second-kind differentials.
pub fn pairing(curve: &Curve, omega1: &RationalDifferential, omega2: &RationalDifferential, precision: i64) -> Result<Report> {
    let ctx = context_for(curve, &[omega1.clone(), omega2.clone()], precision)?;
    let a = cocycle_from_second_kind(&ctx, omega1)?;
    let b = cocycle_from_second_kind(&ctx, omega2)?;
    let value = a.pairing(&b)?;
    let back = b.pairing(&a)?;
    let checks = vec![Check::new("antisymmetry", value == back.neg()).with_detail(format!("reversed: {back}"))];
    let result = json!({ "omega1": omega1.to_string(), "omega2": omega2.to_string(), "pairing": scalar_json(&value) });
    Ok(Report::new("pairing", curve, 0, ctx.precision(), result, checks))
}

/// The Gram matrix of the pairing on the canonical basis.
pub fn gram(curve: &Curve, precision: i64) -> Result<Report> {
    let (basis, gram) = gram_matrix(curve, precision)?;
    let n = gram.len();
    let anti = (0..n).all(|i| (0..n).all(|j| gram[i][j] == gram[j][i].neg()));
    let checks = vec![
        Check::new("antisymmetric", anti),
        Check::new("nondegenerate", rank(gram.clone()) == n).with_detail(format!("rank {}", rank(gram.clone()))),
    ];
    let result = json!({
        "basis": basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "gram_matrix": gram.iter().map(|r| r.iter().map(scalar_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(Report::new("pairing", curve, 0, precision, result, checks))
}

fn residue_entry(omega: &RationalDifferential, reg: &PlaceRegistry) -> Result<(Value, bool)> {
    let mut poles = Vec::new();
    for (place, order) in omega.poles(reg)? {
        poles.push(json!({ "place": place.id().to_string(), "order": order, "residue": scalar_json(&omega.residue(&place)?) }));
    }
    let sum = omega.residue_sum(reg)?;
    Ok((json!({ "omega": omega.to_string(), "poles": poles, "sum": scalar_json(&sum) }), sum.is_zero()))
}

/// Residues of `omega`, or of `samples` seeded random differentials when `omega` is absent;
/// each sum must vanish.
pub fn residues(curve: &Curve, omega: Option<&RationalDifferential>, samples: usize, seed: u64) -> Result<Report> {
    let reg = PlaceRegistry::new(curve);
    let forms: Vec<RationalDifferential> = match omega {
        Some(w) => vec![w.clone()],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| RationalDifferential::new(random_function(curve, &mut rng))).collect()
        }
    };
    let mut entries = Vec::new();
    let mut checks = Vec::new();
    for (i, w) in forms.iter().enumerate() {
        match residue_entry(w, &reg) {
            Ok((entry, ok)) => {
                checks.push(Check::new(format!("sum of residues of form {i} is 0"), ok));
                entries.push(entry);
            }
            Err(e) => checks.push(Check::new(format!("sum of residues of form {i} is 0"), false).with_detail(e.to_string())),
        }
    }
    let mut r = Report::new("residues", curve, seed, 0, json!({ "forms": entries }), checks);
    if forms.is_empty() {
        r.warnings.push("no forms sampled; the suite is vacuous".into());
    }
    Ok(r)
}

/// The Cartier operator on `omega`, or the suite `C(C^{-1} w) = w`, `C(g^{p-1} dg) = dg` on
/// `samples` seeded random inputs.
pub fn cartier_suite(curve: &Curve, omega: Option<&RationalDifferential>, samples: usize, seed: u64) -> Result<Report> {
    let p = curve.characteristic();
    if p == 0 {
        return Err(Error::NotCharacteristicP);
    }
    let mut checks = Vec::new();
    let result = match omega {
        Some(w) => {
            let c = cartier(w)?;
            let ci = cartier_inverse(w)?;
            checks.push(Check::new("C(C^{-1}(omega)) = omega", cartier(&ci)?.sub(w).is_zero()));
            json!({ "omega": w.to_string(), "cartier": c.to_string(), "cartier_inverse": ci.to_string() })
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut round_trip = 0;
            let mut log_forms = 0;
            for i in 0..samples {
                let w = RationalDifferential::new(random_function(curve, &mut rng));
                let ok = cartier_inverse(&w).and_then(|ci| cartier(&ci)).map(|c| c.sub(&w).is_zero());
                round_trip += usize::from(matches!(ok, Ok(true)));
                checks.push(Check::from_result(format!("C(C^{{-1}}(w_{i})) = w_{i}"), ok));
            }
            for i in 0..samples {
                let g = random_nonzero_function(curve, &mut rng);
                let dg = RationalDifferential::exact(&g);
                let ok = g.pow(p as i64 - 1).and_then(|gp| cartier(&dg.mul_function(&gp))).map(|c| c.sub(&dg).is_zero());
                log_forms += usize::from(matches!(ok, Ok(true)));
                checks.push(Check::from_result(format!("C(g_{i}^(p-1) dg_{i}) = dg_{i}"), ok));
            }
            json!({ "samples": samples, "round_trips": round_trip, "g_pow_dg": log_forms })
        }
    };
    Ok(Report::new("cartier", curve, seed, 0, result, checks))
}

/// The Deligne-Illusie suite with two seeded lift families.
pub fn di_check(curve: &Curve, seed: u64, precision: i64) -> Result<Report> {
    let r = charp::di_check(curve, seed, precision, 2)?;
    let result = json!({ "families": r.families, "test_forms": r.test_forms });
    let mut report = Report::new("di-check", curve, seed, r.precision, result, r.checks);
    if r.precision > precision {
        report.warnings.push(format!("precision raised from {precision} to {}", r.precision));
    }
    Ok(report)
}

/// Samples closed `(0,1)`-adeles, finds a coboundary witness for each, and compares
/// `dim H^{1,0} + dim H^{0,1}` with `dim H^1_DR`.
pub fn example1(curve: &Curve, samples: usize, seed: u64, precision: i64) -> Result<Report> {
    if curve.characteristic() != 0 {
        return Err(Error::UnsupportedCharacteristic(curve.characteristic()));
    }
    if curve.genus() == 0 {
        return Err(Error::InvalidSpec("the decomposition question needs genus >= 1".into()));
    }
    let ctx = AdeleContext::new(curve, precision);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut found = 0;
    for i in 0..samples {
        let beta = random_closed_01(&ctx, &mut rng)?;
        match try_coboundary_01(&ctx, &beta) {
            Ok(Some(w)) => {
                found += 1;
                checks.push(Check::new(format!("closed (0,1)-adele {i} is a coboundary"), true).with_witness(adele0_json(&w)));
            }
            Ok(None) => checks.push(Check::new(format!("closed (0,1)-adele {i} is a coboundary"), false)),
            Err(e) => checks.push(Check::new(format!("closed (0,1)-adele {i} is a coboundary"), false).with_detail(e.to_string())),
        }
    }
    let h10 = hodge_dimension(curve);
    let h1 = h1dr_dimension(curve);
    checks.push(
        Check::new("dim H^{1,0} + dim H^{0,1} < dim H^1_DR", found == samples && h10 < h1)
            .with_detail(format!("{h10} + 0 < {h1}")),
    );
    let result = json!({
        "samples": samples,
        "witnesses_found": found,
        "h01_contribution": if found == samples { json!(0) } else { Value::Null },
        "h10_dimension": h10,
        "h1dr_dimension": h1,
        "decomposition_fails": found == samples && h10 < h1,
    });
    let mut r = Report::new("example1", curve, seed, precision, result, checks);
    if samples == 0 {
        r.warnings.push("no adeles sampled; the H^{0,1} check is vacuous".into());
    }
    Ok(r)
}
