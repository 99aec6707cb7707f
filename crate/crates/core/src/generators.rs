//! Named elements: θ, divided powers, dense-orbit elements, ρ, φ, P̃, η and
//! Schur elements.
//!
//! Indexing follows dimension vectors: `gamma(k)` has grade `(k+1, k)` and
//! `mu(k)` grade `(k, k+1)`, so `gamma(0) = θ0` and `mu(0) = θ1`.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use serde_json::{json, Value};

use crate::hallcore::{HallAlgebra, HallElem, HallError, QEps};
use crate::kronrep::{enumerate_classes, IndecompLabel, IsoClass};
use crate::symfun::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Theta(u8),
    ThetaDiv(u8, u32),
    Gamma(u32),
    Mu(u32),
    Rho(u32),
    Phi(u32),
    Ptilde(u32),
    Eta(u32),
    Schur(Partition),
}

impl Tag {
    pub fn grade(&self) -> (usize, usize) {
        match self {
            Tag::Theta(0) => (1, 0),
            Tag::Theta(_) => (0, 1),
            Tag::ThetaDiv(0, k) => (*k as usize, 0),
            Tag::ThetaDiv(_, k) => (0, *k as usize),
            Tag::Gamma(k) => (*k as usize + 1, *k as usize),
            Tag::Mu(k) => (*k as usize, *k as usize + 1),
            Tag::Rho(k) | Tag::Phi(k) | Tag::Ptilde(k) | Tag::Eta(k) => (*k as usize, *k as usize),
            Tag::Schur(l) => (l.weight() as usize, l.weight() as usize),
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Theta(i) => write!(f, "theta{i}"),
            Tag::ThetaDiv(i, k) => write!(f, "theta{i}^({k})"),
            Tag::Gamma(k) => write!(f, "gamma{k}"),
            Tag::Mu(k) => write!(f, "mu{k}"),
            Tag::Rho(k) => write!(f, "rho{k}"),
            Tag::Phi(k) => write!(f, "phi{k}"),
            Tag::Ptilde(k) => write!(f, "ptilde{k}"),
            Tag::Eta(k) => write!(f, "eta{k}"),
            Tag::Schur(l) => write!(f, "schur{l}"),
        }
    }
}

/// `θ0` is the indicator of the simple at vertex 0, `θ1` of the simple at 1.
pub fn theta(q: u32, i: u8) -> HallElem {
    let label = if i == 0 {
        IndecompLabel::Preinj(1)
    } else {
        IndecompLabel::Preproj(1)
    };
    HallElem::indicator(IsoClass::from_labels(q, &[label]), QEps::one(q))
}

/// `ε^{-2k(k+1)}` times the indicator of the dense orbit `I_{k+1}` in grade `(k+1, k)`.
pub fn gamma(q: u32, k: u32) -> HallElem {
    let c = IsoClass::from_labels(q, &[IndecompLabel::Preinj(k + 1)]);
    HallElem::indicator(c, QEps::eps_pow(q, -2 * (k as i64) * (k as i64 + 1)))
}

/// `ε^{-2k(k+1)}` times the indicator of the dense orbit `P_{k+1}` in grade `(k, k+1)`.
pub fn mu(q: u32, k: u32) -> HallElem {
    let c = IsoClass::from_labels(q, &[IndecompLabel::Preproj(k + 1)]);
    HallElem::indicator(c, QEps::eps_pow(q, -2 * (k as i64) * (k as i64 + 1)))
}

/// `ε^{-2k²}` times the indicator of the regular locus in grade `(k, k)`.
pub fn rho(q: u32, k: u32) -> Result<HallElem, HallError> {
    let coeff = QEps::eps_pow(q, -2 * (k as i64) * (k as i64));
    let classes = enumerate_classes((k as usize, k as usize), q)?;
    Ok(HallElem::from_terms(
        q,
        classes
            .into_iter()
            .filter(IsoClass::is_regular)
            .map(|c| (c, coeff.clone())),
    ))
}

/// The indicator of all of `E_V` in grade `d`.
pub fn indicator_all(q: u32, d: (usize, usize)) -> Result<HallElem, HallError> {
    let classes = enumerate_classes(d, q)?;
    Ok(HallElem::from_terms(q, classes.into_iter().map(|c| (c, QEps::one(q)))))
}

/// A realized element with its provenance.
#[derive(Clone, Debug)]
pub struct NamedElement {
    pub tag: Tag,
    pub q: u32,
    pub convention: String,
    pub elem: HallElem,
}

impl NamedElement {
    pub fn to_json(&self) -> Value {
        json!({
            "tag": self.tag.to_string(),
            "grade": [self.tag.grade().0, self.tag.grade().1],
            "q": self.q,
            "convention": self.convention,
            "element": self.elem.to_json(),
        })
    }
}

/// Memoizing constructor set bound to one algebra.
pub struct Generators {
    alg: HallAlgebra,
    memo: RwLock<HashMap<Tag, HallElem>>,
}

impl Generators {
    pub fn new(alg: HallAlgebra) -> Self {
        Generators {
            alg,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &HallAlgebra {
        &self.alg
    }

    pub fn q(&self) -> u32 {
        self.alg.q()
    }

    fn eps(&self, k: i64) -> QEps {
        QEps::eps_pow(self.q(), k)
    }

    pub fn named(&self, tag: Tag) -> Result<NamedElement, HallError> {
        Ok(NamedElement {
            elem: self.get(&tag)?,
            q: self.q(),
            convention: self.alg.convention().hash(),
            tag,
        })
    }

    pub fn get(&self, tag: &Tag) -> Result<HallElem, HallError> {
        if let Some(e) = self.memo.read().unwrap().get(tag) {
            return Ok(e.clone());
        }
        let e = self.build(tag)?;
        self.memo.write().unwrap().insert(tag.clone(), e.clone());
        Ok(e)
    }

    fn build(&self, tag: &Tag) -> Result<HallElem, HallError> {
        let q = self.q();
        Ok(match tag {
            Tag::Theta(i) => theta(q, *i),
            Tag::ThetaDiv(i, k) => {
                let t = theta(q, *i);
                let mut acc = HallElem::unit(q);
                for _ in 0..*k {
                    acc = self.alg.product(&acc, &t)?;
                }
                let rule = self.alg.convention().divided.exponent(*k);
                acc.scale(&(&self.eps(rule) / &QEps::qfactorial(q, *k)))
            }
            Tag::Gamma(k) => gamma(q, *k),
            Tag::Mu(k) => mu(q, *k),
            Tag::Rho(k) => rho(q, *k)?,
            Tag::Phi(k) => {
                assert!(*k >= 1, "phi is indexed from 1");
                let g = gamma(q, k - 1);
                let t = theta(q, 1);
                let a = self.alg.product(&g, &t)?;
                let b = self.alg.product(&t, &g)?;
                a.sub(&b.shift(-2))
            }
            Tag::Ptilde(0) => HallElem::unit(q),
            Tag::Ptilde(k) => {
                // P̃_k = (1/[k]) sum_{r=1}^k ε^{r-k} φ_r P̃_{k-r}
                let mut acc = HallElem::zero(q);
                for r in 1..=*k {
                    let term = self
                        .alg
                        .product(&self.get(&Tag::Phi(r))?, &self.get(&Tag::Ptilde(k - r))?)?;
                    acc = acc.add(&term.shift(r as i64 - *k as i64));
                }
                acc.scale(&QEps::qint(q, *k as i64).inv().expect("[k] is nonzero"))
            }
            Tag::Eta(k) => {
                assert!(*k >= 1, "eta is indexed from 1");
                // η_k = [k] ρ_k - ([k]/k) sum_{s<k} (s/[s]) η_s ρ_{k-s}
                let qk = QEps::qint(q, *k as i64);
                let mut sum = HallElem::zero(q);
                for s in 1..*k {
                    let prod = self.alg.product(&self.get(&Tag::Eta(s))?, &rho(q, k - s)?)?;
                    let w = &QEps::from_int(q, s as i64) / &QEps::qint(q, s as i64);
                    sum = sum.add(&prod.scale(&w));
                }
                let lead = rho(q, *k)?.scale(&qk);
                lead.sub(&sum.scale(&(&qk / &QEps::from_int(q, *k as i64))))
            }
            Tag::Schur(lambda) => self.schur(lambda)?,
        })
    }

    pub fn theta(&self, i: u8) -> HallElem {
        theta(self.q(), i)
    }

    pub fn theta_div(&self, i: u8, k: u32) -> Result<HallElem, HallError> {
        self.get(&Tag::ThetaDiv(i, k))
    }

    pub fn gamma(&self, k: u32) -> HallElem {
        gamma(self.q(), k)
    }

    pub fn mu(&self, k: u32) -> HallElem {
        mu(self.q(), k)
    }

    pub fn rho(&self, k: u32) -> Result<HallElem, HallError> {
        self.get(&Tag::Rho(k))
    }

    pub fn phi(&self, k: u32) -> Result<HallElem, HallError> {
        self.get(&Tag::Phi(k))
    }

    pub fn ptilde(&self, k: u32) -> Result<HallElem, HallError> {
        self.get(&Tag::Ptilde(k))
    }

    pub fn eta(&self, k: u32) -> Result<HallElem, HallError> {
        self.get(&Tag::Eta(k))
    }

    /// `ρ_{λ1} ρ_{λ2} ...`.
    pub fn rho_product(&self, lambda: &Partition) -> Result<HallElem, HallError> {
        let mut acc = HallElem::unit(self.q());
        for &part in lambda.parts() {
            acc = self.alg.product(&acc, &self.rho(part)?)?;
        }
        Ok(acc)
    }

    /// Jacobi–Trudi: `det(ρ_{λ_i - i + j})`, expanded over permutations.
    fn schur(&self, lambda: &Partition) -> Result<HallElem, HallError> {
        let q = self.q();
        let t = lambda.len();
        let parts = lambda.parts();
        let mut total = HallElem::zero(q);
        let mut perm: Vec<usize> = (0..t).collect();
        loop {
            let idx: Vec<i64> = (0..t).map(|i| parts[i] as i64 - i as i64 + perm[i] as i64).collect();
            if idx.iter().all(|&k| k >= 0) {
                let mut acc = HallElem::unit(q);
                for &k in &idx {
                    if k > 0 {
                        acc = self.alg.product(&acc, &self.rho(k as u32)?)?;
                    }
                }
                total = if permutation_sign(&perm) > 0 {
                    total.add(&acc)
                } else {
                    total.sub(&acc)
                };
            }
            let Some(i) = (1..t).rev().find(|&i| perm[i - 1] < perm[i]) else {
                break;
            };
            let j = (i..t).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        Ok(total)
    }

    pub fn schur_of(&self, lambda: &Partition) -> Result<HallElem, HallError> {
        self.get(&Tag::Schur(lambda.clone()))
    }
}

fn permutation_sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
