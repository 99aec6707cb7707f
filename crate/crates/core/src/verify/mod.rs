//! Executable identity checks with exact discrepancies.
//!
//! Every check returns a [`CheckReport`] whose discrepancy is an exact algebra
//! element (or scalar, or tensor); `pass` holds iff that discrepancy is zero.

mod identities;
mod interpolate;
mod linalg;
mod structural;
mod suite;

pub use interpolate::{interpolate_constants, type_key, InterpolateError, LaurentFit, ParityFit};
pub use linalg::solve_in_span;
pub use suite::{
    jobs_for, negative_controls, run_suite, run_with, Job, NegativeControl, SuiteConfig, SuiteSummary, PSERIES_WAIVER,
    SUITE_IDS,
};

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::generators::Generators;
use crate::hallcore::{HallAlgebra, HallElem, HallError, HallTensor, QEps, TwistConvention};

/// Exact difference between the two sides of a checked identity.
#[derive(Clone, Debug, PartialEq)]
pub enum Discrepancy {
    Elem(HallElem),
    Scalar(QEps),
    Tensor(HallTensor),
}

impl Discrepancy {
    pub fn is_zero(&self) -> bool {
        match self {
            Discrepancy::Elem(e) => e.is_zero(),
            Discrepancy::Scalar(s) => s.is_zero(),
            Discrepancy::Tensor(t) => t.is_zero(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Discrepancy::Elem(e) => json!({"element": e.to_json()}),
            Discrepancy::Scalar(s) => json!({"scalar": s.to_json()}),
            Discrepancy::Tensor(t) => json!({"tensor": t.to_json()}),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub q: u32,
    pub convention: String,
    pub pass: bool,
    pub discrepancy: Discrepancy,
    /// `k` when the sides were compared up to the unit `ε^k`.
    pub unit: Option<i64>,
    pub note: String,
    /// Reason the check is excluded from the exit status, if it is.
    pub waived: Option<String>,
}

impl CheckReport {
    pub fn new(id: &str, q: u32, convention: &TwistConvention, discrepancy: Discrepancy) -> Self {
        CheckReport {
            id: id.to_string(),
            params: BTreeMap::new(),
            q,
            convention: convention.hash(),
            pass: discrepancy.is_zero(),
            discrepancy,
            unit: None,
            note: String::new(),
            waived: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_unit(mut self, unit: Option<i64>) -> Self {
        self.unit = unit;
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn waive(mut self, reason: impl Into<String>) -> Self {
        self.waived = Some(reason.into());
        self
    }

    /// Sort key making merged parallel output deterministic.
    pub fn key(&self) -> (String, String, u32) {
        (
            self.id.clone(),
            Value::from(serde_json::Map::from_iter(self.params.clone())).to_string(),
            self.q,
        )
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "id": self.id,
            "params": self.params,
            "q": self.q,
            "convention": self.convention,
            "pass": self.pass,
            "discrepancy": self.discrepancy.to_json(),
        });
        if let Some(u) = self.unit {
            v["unit"] = json!(u);
        }
        if !self.note.is_empty() {
            v["note"] = json!(self.note);
        }
        if let Some(w) = &self.waived {
            v["waived"] = json!(w);
        }
        v
    }
}

/// How checks stated "up to an ε-power" compare their sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitPolicy {
    /// Exact equality.
    Exact,
    /// Any pure ε-power is accepted and recorded.
    Free,
    /// Equality after multiplying the right side by `ε^k`.
    Fixed(i64),
}

/// Compares `lhs` with `rhs` under `policy`, returning the discrepancy and
/// the unit used.
pub fn compare(lhs: &HallElem, rhs: &HallElem, policy: UnitPolicy) -> (Discrepancy, Option<i64>) {
    let unit = match policy {
        UnitPolicy::Exact => None,
        UnitPolicy::Fixed(k) => Some(k),
        UnitPolicy::Free => lhs.proportionality(rhs).and_then(|s| s.as_eps_power()),
    };
    let d = lhs.sub(&rhs.shift(unit.unwrap_or(0)));
    let unit = if policy == UnitPolicy::Exact { None } else { unit };
    (Discrepancy::Elem(d), unit)
}

/// A check context: one algebra with memoized generators.
pub struct Checker {
    gens: Generators,
}

impl Checker {
    pub fn new(q: u32, conv: TwistConvention) -> Result<Self, HallError> {
        Ok(Checker {
            gens: Generators::new(HallAlgebra::new(q, conv)?),
        })
    }

    pub fn from_algebra(alg: HallAlgebra) -> Self {
        Checker {
            gens: Generators::new(alg),
        }
    }

    /// A checker with another convention over the same structure constants.
    pub fn with_convention(&self, conv: TwistConvention) -> Self {
        Self::from_algebra(self.alg().with_convention(conv))
    }

    pub fn gens(&self) -> &Generators {
        &self.gens
    }

    pub fn alg(&self) -> &HallAlgebra {
        self.gens.algebra()
    }

    pub fn q(&self) -> u32 {
        self.gens.q()
    }

    pub fn conv(&self) -> &TwistConvention {
        self.alg().convention()
    }

    fn mul(&self, f: &HallElem, g: &HallElem) -> Result<HallElem, HallError> {
        self.alg().product(f, g)
    }

    fn eps(&self, k: i64) -> QEps {
        QEps::eps_pow(self.q(), k)
    }

    fn qint(&self, n: i64) -> QEps {
        QEps::qint(self.q(), n)
    }

    fn report(&self, id: &str, d: Discrepancy) -> CheckReport {
        CheckReport::new(id, self.q(), self.conv(), d)
    }
}
