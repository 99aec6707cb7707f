//! Finitely supported class functions with coefficients in Q(ε).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::kronrep::{IsoClass, Orientation};

use super::qeps::QEps;
use super::HallError;

/// A map from isomorphism classes to `Q(ε)` with zero values pruned.
///
/// Classes of a `Minus` element are labelled by the class of the transposed
/// representation on the same dimension vector.
#[derive(Clone, PartialEq, Eq)]
pub struct HallElem {
    q: u32,
    orientation: Orientation,
    coeffs: BTreeMap<IsoClass, QEps>,
}

impl HallElem {
    pub fn zero(q: u32) -> Self {
        HallElem {
            q,
            orientation: Orientation::Plus,
            coeffs: BTreeMap::new(),
        }
    }

    /// Indicator of the zero representation.
    pub fn unit(q: u32) -> Self {
        Self::indicator(IsoClass::zero(q), QEps::one(q))
    }

    pub fn indicator(c: IsoClass, coeff: QEps) -> Self {
        let mut e = Self::zero(c.q);
        e.add_term(c, coeff);
        e
    }

    pub fn from_terms(q: u32, terms: impl IntoIterator<Item = (IsoClass, QEps)>) -> Self {
        let mut e = Self::zero(q);
        for (c, v) in terms {
            e.add_term(c, v);
        }
        e
    }

    pub fn with_orientation(mut self, o: Orientation) -> Self {
        self.orientation = o;
        self
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn add_term(&mut self, c: IsoClass, v: QEps) {
        assert_eq!(c.q, self.q, "class over a different field");
        if v.is_zero() {
            return;
        }
        match self.coeffs.entry(c) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn get(&self, c: &IsoClass) -> QEps {
        self.coeffs.get(c).cloned().unwrap_or_else(|| QEps::zero(self.q))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IsoClass, &QEps)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &IsoClass> {
        self.coeffs.keys()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Dimension vectors carrying a nonzero coefficient.
    pub fn grades(&self) -> BTreeSet<(usize, usize)> {
        self.coeffs.keys().map(IsoClass::dims).collect()
    }

    /// The single grade of a nonzero homogeneous element.
    pub fn grade(&self) -> Option<(usize, usize)> {
        let g = self.grades();
        (g.len() == 1).then(|| *g.iter().next().unwrap())
    }

    pub fn homogeneous_part(&self, d: (usize, usize)) -> HallElem {
        self.filter(|c| c.dims() == d)
    }

    pub fn filter(&self, keep: impl Fn(&IsoClass) -> bool) -> HallElem {
        HallElem {
            q: self.q,
            orientation: self.orientation,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(c, _)| keep(c))
                .map(|(c, v)| (c.clone(), v.clone()))
                .collect(),
        }
    }

    /// Zeroes the coefficients of classes with a preprojective or
    /// preinjective summand.
    pub fn restrict_regular(&self) -> HallElem {
        self.filter(IsoClass::is_regular)
    }

    pub fn is_regular_supported(&self) -> bool {
        self.coeffs.keys().all(IsoClass::is_regular)
    }

    fn check(&self, o: &Self) -> Result<(), HallError> {
        if self.q != o.q {
            return Err(HallError::FieldMismatch(self.q, o.q));
        }
        if self.orientation != o.orientation && !self.is_zero() && !o.is_zero() {
            return Err(HallError::OrientationMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, HallError> {
        self.check(o)?;
        let mut out = self.clone();
        if self.is_zero() {
            out.orientation = o.orientation;
        }
        for (c, v) in &o.coeffs {
            out.add_term(c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("incompatible Hall elements")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|v| -v)
    }

    pub fn scale(&self, s: &QEps) -> Self {
        self.map_coeffs(|v| v * s)
    }

    /// Multiplies by `ε^k`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        self.scale(&QEps::eps_pow(self.q, k))
    }

    pub fn map_coeffs(&self, f: impl Fn(&QEps) -> QEps) -> Self {
        let mut out = HallElem {
            q: self.q,
            orientation: self.orientation,
            coeffs: BTreeMap::new(),
        };
        for (c, v) in &self.coeffs {
            out.add_term(c.clone(), f(v));
        }
        out
    }

    /// Relabels classes by `f`, summing collisions.
    pub fn map_classes(&self, f: impl Fn(&IsoClass) -> IsoClass) -> Self {
        let mut out = HallElem::zero(self.q).with_orientation(self.orientation);
        for (c, v) in &self.coeffs {
            out.add_term(f(c), v.clone());
        }
        out
    }

    /// Exchanges preprojective and preinjective labels. This is the effect on
    /// class functions of swapping the two vertices.
    pub fn dual(&self) -> Self {
        self.map_classes(IsoClass::dual)
    }

    /// `Some(s)` with `self = s * other`, when such a scalar exists.
    pub fn proportionality(&self, other: &Self) -> Option<QEps> {
        if self.is_zero() && other.is_zero() {
            return Some(QEps::one(self.q));
        }
        if self.coeffs.keys().ne(other.coeffs.keys()) {
            return None;
        }
        let (c, v) = other.coeffs.iter().next()?;
        let s = &self.get(c) / v;
        (other.scale(&s) == *self).then_some(s)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(c, v)| json!({"class": c.to_json(), "coeff": v.to_json()}))
            .collect();
        json!({
            "q": self.q,
            "orientation": self.orientation,
            "terms": terms,
        })
    }
}

impl fmt::Debug for HallElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HallElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, v)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})[{c}]")?;
        }
        Ok(())
    }
}
