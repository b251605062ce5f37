use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::curve::{Curve, FunctionFieldElement, Place, PlaceId, PlaceRegistry};
use crate::error::Result;
use crate::laurent::{expand, expand_differential, LaurentSeries};

/// Whether an adele has function (`p = 0`) or differential (`p = 1`) coefficients.
/// Differentials `g dx` are stored by `g`; their local series are `dt`-coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Form {
    Function,
    Differential,
}

impl Form {
    pub fn degree(self) -> u8 {
        match self {
            Form::Function => 0,
            Form::Differential => 1,
        }
    }

    /// Form of a product, or `None` when it would be a 2-form (zero on a curve).
    pub fn product(self, o: Form) -> Option<Form> {
        match (self, o) {
            (Form::Function, Form::Function) => Some(Form::Function),
            (Form::Differential, Form::Differential) => None,
            _ => Some(Form::Differential),
        }
    }
}

type ExpansionKey = (Form, PlaceId, String);

/// Shared state for adele computations on one curve: the place registry, working precision and
/// a memo of local expansions (the same rational components are expanded many times over).
#[derive(Debug)]
pub struct AdeleContext {
    registry: PlaceRegistry,
    precision: i64,
    expansions: Mutex<BTreeMap<ExpansionKey, LaurentSeries>>,
}

pub type Ctx = Arc<AdeleContext>;

impl AdeleContext {
    pub fn new(curve: &Curve, precision: i64) -> Ctx {
        Arc::new(AdeleContext { registry: PlaceRegistry::new(curve), precision, expansions: Mutex::default() })
    }

    pub fn curve(&self) -> &Curve {
        self.registry.curve()
    }

    pub fn registry(&self) -> &PlaceRegistry {
        &self.registry
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn place(&self, id: &PlaceId) -> Result<Arc<Place>> {
        self.registry.place(id)
    }

    /// Local series of a rational element at a place, at the working precision.
    pub fn local(&self, form: Form, g: &FunctionFieldElement, place: &Arc<Place>) -> Result<LaurentSeries> {
        let key = (form, place.id().clone(), g.to_string());
        if let Some(s) = self.expansions.lock().expect("expansion memo").get(&key) {
            return Ok(s.clone());
        }
        let s = match form {
            Form::Function => expand(g, place, self.precision)?,
            Form::Differential => expand_differential(g, place, self.precision)?,
        };
        self.expansions.lock().expect("expansion memo").insert(key, s.clone());
        Ok(s)
    }

    /// Places where a rational element of the given form may fail to be integral.
    pub fn candidate_poles(&self, g: &FunctionFieldElement) -> Result<Vec<Arc<Place>>> {
        if g.is_zero() {
            return Ok(Vec::new());
        }
        self.registry.candidate_poles(g)
    }
}
