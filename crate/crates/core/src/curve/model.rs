use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::factor::is_squarefree;
use crate::arith::{BaseField, Field, Poly, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub enum CurveKind {
    ProjectiveLine,
    /// `y^2 = f(x)` with `f` squarefree of odd degree 3 or 5.
    Hyperelliptic { f: Poly<Scalar> },
}

/// A smooth projective curve over `Q` or `F_p`.
#[derive(Debug, PartialEq)]
pub struct CurveModel {
    base: BaseField,
    kind: CurveKind,
}

pub type Curve = Arc<CurveModel>;

impl CurveModel {
    pub fn projective_line(base: BaseField) -> Curve {
        Arc::new(CurveModel { base, kind: CurveKind::ProjectiveLine })
    }

    pub fn hyperelliptic(f: Poly<Scalar>) -> Result<Curve> {
        let base = *f.ctx();
        if base.characteristic() == 2 {
            return Err(Error::InvalidCurve("hyperelliptic models need characteristic != 2".into()));
        }
        if !matches!(f.deg(), 3 | 5) {
            return Err(Error::InvalidCurve(format!("deg f must be 3 or 5, got {}", f.deg())));
        }
        if !is_squarefree(&f) {
            return Err(Error::SingularModel(format!("f = {f} is not squarefree")));
        }
        Ok(Arc::new(CurveModel { base, kind: CurveKind::Hyperelliptic { f } }))
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn is_hyperelliptic(&self) -> bool {
        matches!(self.kind, CurveKind::Hyperelliptic { .. })
    }

    /// The defining polynomial `f`, if hyperelliptic.
    pub fn f(&self) -> Option<&Poly<Scalar>> {
        match &self.kind {
            CurveKind::Hyperelliptic { f } => Some(f),
            CurveKind::ProjectiveLine => None,
        }
    }

    pub fn deg_f(&self) -> usize {
        self.f().map_or(0, |f| f.deg() as usize)
    }

    pub fn genus(&self) -> usize {
        match &self.kind {
            CurveKind::ProjectiveLine => 0,
            CurveKind::Hyperelliptic { f } => (f.deg() as usize - 1) / 2,
        }
    }

    pub fn from_spec(spec: &CurveSpec) -> Result<Curve> {
        let base = match spec.characteristic {
            0 => BaseField::Rationals,
            p => BaseField::prime(p).map_err(|e| Error::InvalidSpec(e.to_string()))?,
        };
        match &spec.model {
            ModelSpec::Named(s) if s == "P1" => Ok(Self::projective_line(base)),
            ModelSpec::Named(s) => Err(Error::InvalidSpec(format!("unknown model {s:?}"))),
            ModelSpec::Hyperelliptic { hyperelliptic_f } => {
                let coeffs = hyperelliptic_f
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => base.parse(s),
                        Value::Number(n) => base.parse(&n.to_string()),
                        other => Err(Error::InvalidSpec(format!("bad coefficient {other}"))),
                    })
                    .collect::<Result<Vec<Scalar>>>()
                    .map_err(|e| Error::InvalidSpec(e.to_string()))?;
                Self::hyperelliptic(Poly::new(&base, coeffs)).map_err(|e| Error::InvalidSpec(e.to_string()))
            }
        }
    }

    pub fn to_spec(&self) -> CurveSpec {
        let model = match &self.kind {
            CurveKind::ProjectiveLine => ModelSpec::Named("P1".into()),
            CurveKind::Hyperelliptic { f } => ModelSpec::Hyperelliptic {
                hyperelliptic_f: f.coeffs().iter().map(|c| Value::String(c.to_string())).collect(),
            },
        };
        CurveSpec { characteristic: self.characteristic(), model }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CurveKind::ProjectiveLine => write!(fm, "P^1 over {}", self.base),
            CurveKind::Hyperelliptic { f } => write!(fm, "y^2 = {f} over {}", self.base),
        }
    }
}

/// Curve-spec document: `{"characteristic": 0 | p, "model": "P1" | {"hyperelliptic_f": [c0, c1, ...]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub characteristic: u64,
    pub model: ModelSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Named(String),
    Hyperelliptic { hyperelliptic_f: Vec<Value> },
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }
}

/// `y^2 = x^3 - x` over the given field; the running example of the crate.
pub fn legendre_elliptic(base: BaseField) -> Curve {
    CurveModel::hyperelliptic(Poly::from_ints(&base, &[0, -1, 0, 1])).expect("smooth for char != 2")
}

/// A genus-two curve `y^2 = x^5 - x` (smooth away from characteristic 2 and 5).
pub fn genus_two_example(base: BaseField) -> Result<Curve> {
    CurveModel::hyperelliptic(Poly::from_ints(&base, &[0, -1, 0, 0, 0, 1]))
}

impl CurveModel {
    pub fn lc_f(&self) -> Option<Scalar> {
        self.f().map(|f| f.leading())
    }

    pub fn f_derivative(&self) -> Option<Poly<Scalar>> {
        self.f().map(|f| f.derivative())
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(&self.base)
    }
}
