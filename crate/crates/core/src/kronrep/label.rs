//! Indecomposable labels and isomorphism classes.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::exactfield::ClosedPoint;
use crate::symfun::Partition;

use super::KronError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndecompLabel {
    /// `P_k`, dimension `(k-1, k)`.
    Preproj(u32),
    /// `I_k`, dimension `(k, k-1)`.
    Preinj(u32),
    /// `R_{point, m}`, dimension `(m deg, m deg)`.
    Regular(ClosedPoint, u32),
}

impl IndecompLabel {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            IndecompLabel::Preproj(k) => (*k as usize - 1, *k as usize),
            IndecompLabel::Preinj(k) => (*k as usize, *k as usize - 1),
            IndecompLabel::Regular(pt, m) => {
                let n = pt.degree() * *m as usize;
                (n, n)
            }
        }
    }

    /// Degree of the residue field of the endomorphism ring.
    pub fn residue_degree(&self) -> u32 {
        match self {
            IndecompLabel::Regular(pt, _) => pt.degree() as u32,
            _ => 1,
        }
    }

    pub fn dual(&self) -> IndecompLabel {
        match self {
            IndecompLabel::Preproj(k) => IndecompLabel::Preinj(*k),
            IndecompLabel::Preinj(k) => IndecompLabel::Preproj(*k),
            r => r.clone(),
        }
    }
}

impl fmt::Display for IndecompLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndecompLabel::Preproj(k) => write!(f, "P{k}"),
            IndecompLabel::Preinj(k) => write!(f, "I{k}"),
            IndecompLabel::Regular(pt, m) => write!(f, "R[{pt}]^{m}"),
        }
    }
}

/// An isomorphism class: multiplicities of preprojectives and preinjectives
/// plus a partition at each closed point of the regular spectrum.
///
/// All maps are sorted, so derived equality, ordering and hashing are
/// canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoClass {
    pub q: u32,
    pub preproj: BTreeMap<u32, u32>,
    pub preinj: BTreeMap<u32, u32>,
    pub regular: BTreeMap<ClosedPoint, Partition>,
}

impl IsoClass {
    pub fn zero(q: u32) -> Self {
        IsoClass {
            q,
            preproj: BTreeMap::new(),
            preinj: BTreeMap::new(),
            regular: BTreeMap::new(),
        }
    }

    pub fn from_labels(q: u32, labels: &[IndecompLabel]) -> Self {
        let mut c = Self::zero(q);
        for l in labels {
            c.add_label(l.clone(), 1);
        }
        c
    }

    pub fn add_label(&mut self, label: IndecompLabel, mult: u32) {
        if mult == 0 {
            return;
        }
        match label {
            IndecompLabel::Preproj(k) => *self.preproj.entry(k).or_insert(0) += mult,
            IndecompLabel::Preinj(k) => *self.preinj.entry(k).or_insert(0) += mult,
            IndecompLabel::Regular(pt, m) => {
                let entry = self.regular.entry(pt).or_insert_with(Partition::empty);
                let mut parts = entry.parts().to_vec();
                parts.extend(std::iter::repeat_n(m, mult as usize));
                *entry = Partition::from_unsorted(parts);
            }
        }
    }

    /// Labels with multiplicity, preprojectives first, then regulars, then
    /// preinjectives.
    pub fn labels(&self) -> Vec<(IndecompLabel, u32)> {
        let mut out: Vec<(IndecompLabel, u32)> = self
            .preproj
            .iter()
            .map(|(&k, &m)| (IndecompLabel::Preproj(k), m))
            .collect();
        for (pt, lam) in &self.regular {
            let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
            for &part in lam.parts() {
                *counts.entry(part).or_insert(0) += 1;
            }
            out.extend(
                counts
                    .into_iter()
                    .map(|(m, c)| (IndecompLabel::Regular(pt.clone(), m), c)),
            );
        }
        out.extend(self.preinj.iter().map(|(&k, &m)| (IndecompLabel::Preinj(k), m)));
        out
    }

    pub fn dims(&self) -> (usize, usize) {
        self.labels().iter().fold((0, 0), |acc, (l, m)| {
            let d = l.dims();
            (acc.0 + d.0 * *m as usize, acc.1 + d.1 * *m as usize)
        })
    }

    /// No preprojective and no preinjective summand.
    pub fn is_regular(&self) -> bool {
        self.preproj.is_empty() && self.preinj.is_empty()
    }

    pub fn has_preproj(&self) -> bool {
        !self.preproj.is_empty()
    }

    pub fn has_preinj(&self) -> bool {
        !self.preinj.is_empty()
    }

    /// Total size `n` of the regular part, of dimension `(n, n)`.
    pub fn regular_size(&self) -> usize {
        self.regular
            .iter()
            .map(|(pt, lam)| pt.degree() * lam.weight() as usize)
            .sum()
    }

    /// Exchanges preprojective and preinjective multiplicities.
    pub fn dual(&self) -> IsoClass {
        IsoClass {
            q: self.q,
            preproj: self.preinj.clone(),
            preinj: self.preproj.clone(),
            regular: self.regular.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        let pairs = |m: &BTreeMap<u32, u32>| -> Value { Value::Array(m.iter().map(|(k, v)| json!([k, v])).collect()) };
        let regular: Vec<Value> = self
            .regular
            .iter()
            .map(|(pt, lam)| json!({"point": pt.to_json(), "partition": lam.parts()}))
            .collect();
        json!({
            "q": self.q,
            "preproj": pairs(&self.preproj),
            "preinj": pairs(&self.preinj),
            "regular": regular,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, KronError> {
        let bad = |what: &str| KronError::Parse(format!("isoclass: {what}"));
        let q = v.get("q").and_then(Value::as_u64).ok_or_else(|| bad("missing q"))? as u32;
        crate::exactfield::check_prime(q)?;
        let pairs = |key: &str| -> Result<BTreeMap<u32, u32>, KronError> {
            let mut out = BTreeMap::new();
            let arr = match v.get(key) {
                None => return Ok(out),
                Some(a) => a.as_array().ok_or_else(|| bad(key))?,
            };
            for item in arr {
                let pair: (u32, u32) = serde_json::from_value(item.clone()).map_err(|e| bad(&e.to_string()))?;
                if pair.0 == 0 {
                    return Err(bad("index must be positive"));
                }
                if pair.1 > 0 {
                    *out.entry(pair.0).or_insert(0) += pair.1;
                }
            }
            Ok(out)
        };
        let mut c = IsoClass {
            q,
            preproj: pairs("preproj")?,
            preinj: pairs("preinj")?,
            regular: BTreeMap::new(),
        };
        if let Some(arr) = v.get("regular") {
            for item in arr.as_array().ok_or_else(|| bad("regular"))? {
                let pt = ClosedPoint::from_json(q, item.get("point").ok_or_else(|| bad("point"))?)?;
                let lam: Partition =
                    serde_json::from_value(item.get("partition").cloned().ok_or_else(|| bad("partition"))?)
                        .map_err(|e| bad(&e.to_string()))?;
                if c.regular.contains_key(&pt) {
                    return Err(bad("repeated point"));
                }
                if !lam.is_empty() {
                    c.regular.insert(pt, lam);
                }
            }
        }
        Ok(c)
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, m) in self.labels() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if m > 1 {
                write!(f, "{m}{l}")?;
            } else {
                write!(f, "{l}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The index `((r_i), (s_i), lambda)`: preprojective and preinjective
/// multiplicities and a partition for the regular part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CbIndex {
    pub preproj: BTreeMap<u32, u32>,
    pub preinj: BTreeMap<u32, u32>,
    pub lambda: Partition,
}

impl CbIndex {
    pub fn dims(&self) -> (usize, usize) {
        let mut d = (0usize, 0usize);
        for (&k, &m) in &self.preproj {
            d.0 += (k as usize - 1) * m as usize;
            d.1 += k as usize * m as usize;
        }
        for (&k, &m) in &self.preinj {
            d.0 += k as usize * m as usize;
            d.1 += (k as usize - 1) * m as usize;
        }
        let n = self.lambda.weight() as usize;
        (d.0 + n, d.1 + n)
    }
}
