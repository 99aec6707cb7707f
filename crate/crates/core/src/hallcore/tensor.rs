//! Elements of the tensor square, as functions on pairs of classes.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::kronrep::IsoClass;

use super::elem::HallElem;
use super::qeps::QEps;

#[derive(Clone, PartialEq, Eq)]
pub struct HallTensor {
    q: u32,
    terms: BTreeMap<(IsoClass, IsoClass), QEps>,
}

impl HallTensor {
    pub fn zero(q: u32) -> Self {
        HallTensor {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, a: IsoClass, b: IsoClass, v: QEps) {
        if v.is_zero() {
            return;
        }
        let key = (a, b);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &v,
            None => v,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// `f ⊗ g`.
    pub fn tensor(f: &HallElem, g: &HallElem) -> Self {
        let mut out = Self::zero(f.q());
        for (a, x) in f.terms() {
            for (b, y) in g.terms() {
                out.add_term(a.clone(), b.clone(), x * y);
            }
        }
        out
    }

    pub fn get(&self, a: &IsoClass, b: &IsoClass) -> QEps {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(|| QEps::zero(self.q))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(IsoClass, IsoClass), &QEps)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), v) in &o.terms {
            out.add_term(a.clone(), b.clone(), v.clone());
        }
        out
    }

    /// Keeps the terms whose pair of classes satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&IsoClass, &IsoClass) -> bool) -> Self {
        HallTensor {
            q: self.q,
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| keep(a, b))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((a, b), v)| json!({"left": a.to_json(), "right": b.to_json(), "coeff": v.to_json()}))
            .collect();
        json!({"q": self.q, "terms": terms})
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), v) in &o.terms {
            out.add_term(a.clone(), b.clone(), -v);
        }
        out
    }
}

impl fmt::Debug for HallTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((a, b), v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})[{a}]⊗[{b}]")?;
        }
        Ok(())
    }
}
