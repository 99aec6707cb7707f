//! Canonical representatives, classification and automorphism counts.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::One;

use crate::exactfield::{factor_poly, invariant_factors, ClosedPoint, MatrixFq, Poly};
use crate::symfun::Partition;

use super::label::{IndecompLabel, IsoClass};
use super::rep::{hom_dim, KronRep, Orientation};
use super::KronError;

/// Companion matrix of a monic polynomial: ones below the diagonal and the
/// negated low coefficients in the last column.
fn companion(g: &Poly) -> MatrixFq {
    let p = g.modulus();
    let n = g.degree().unwrap_or(0);
    let mut c = MatrixFq::zeros(p, n, n);
    for i in 0..n {
        if i + 1 < n {
            c.set(i + 1, i, 1);
        }
        c.set(i, n - 1, (p - g.coeffs()[i]) % p);
    }
    c
}

fn shift_pair(p: u32, rows: usize, cols: usize, down: bool) -> (MatrixFq, MatrixFq) {
    // identity placed at offset 0 and at offset 1 along the longer side
    let mut a = MatrixFq::zeros(p, rows, cols);
    let mut b = MatrixFq::zeros(p, rows, cols);
    for i in 0..rows.min(cols) {
        a.set(i, i, 1);
        if down {
            b.set(i + 1, i, 1);
        } else {
            b.set(i, i + 1, 1);
        }
    }
    (a, b)
}

/// The canonical model of a single indecomposable, Plus orientation.
pub fn indecomposable_rep(q: u32, label: &IndecompLabel) -> KronRep {
    let (x1, x2) = match label {
        IndecompLabel::Preproj(k) => {
            let k = *k as usize;
            shift_pair(q, k, k - 1, true)
        }
        IndecompLabel::Preinj(k) => {
            let k = *k as usize;
            shift_pair(q, k - 1, k, false)
        }
        IndecompLabel::Regular(ClosedPoint::Infinity, m) => {
            let m = *m as usize;
            let mut n = MatrixFq::zeros(q, m, m);
            for i in 0..m.saturating_sub(1) {
                n.set(i + 1, i, 1);
            }
            (n, MatrixFq::identity(q, m))
        }
        IndecompLabel::Regular(ClosedPoint::Finite(g), m) => {
            let c = companion(&g.pow(*m));
            (MatrixFq::identity(q, c.rows()), c.neg())
        }
    };
    KronRep::plus(q, x1, x2).expect("canonical blocks have consistent shapes")
}

/// Block-diagonal sum of the canonical models, in `labels()` order.
pub fn representative(c: &IsoClass) -> KronRep {
    let mut acc = KronRep::zero(c.q, (0, 0), Orientation::Plus);
    for (label, mult) in c.labels() {
        let block = indecomposable_rep(c.q, &label);
        for _ in 0..mult {
            acc = acc.direct_sum(&block).expect("same orientation");
        }
    }
    acc
}

/// Nullity of `V0 (x) S_k -> V1 (x) S_{k+1}`, `v (x) f -> x1 v (x) lambda f + x2 v (x) mu f`,
/// where `S_k` is the space of degree-`k` binary forms.
fn koszul_nullity(x: &KronRep, k: usize) -> usize {
    let (d0, d1) = x.dims();
    let q = x.q();
    let cols = (k + 1) * d0;
    let mut m = MatrixFq::zeros(q, (k + 2) * d1, cols);
    for j in 0..=k {
        for r in 0..d1 {
            for c in 0..d0 {
                m.set(j * d1 + r, j * d0 + c, x.x2().get(r, c));
                m.set((j + 1) * d1 + r, j * d0 + c, x.x1().get(r, c));
            }
        }
    }
    cols - m.rank()
}

/// Preinjective multiplicities from second differences of the nullities.
fn preinj_counts(x: &KronRep) -> BTreeMap<u32, u32> {
    let d0 = x.dims().0;
    let n: Vec<i64> = (0..d0).map(|k| koszul_nullity(x, k) as i64).collect();
    let at = |k: i64| if k < 0 { 0 } else { n[k as usize] };
    let mut out = BTreeMap::new();
    for k in 0..d0 as i64 {
        let c = at(k) - 2 * at(k - 1) + at(k - 2);
        debug_assert!(c >= 0);
        if c > 0 {
            out.insert(k as u32 + 1, c as u32);
        }
    }
    out
}

fn add_part(regular: &mut BTreeMap<ClosedPoint, Vec<u32>>, pt: ClosedPoint, e: u32) {
    regular.entry(pt).or_default().push(e);
}

/// Structural classification of a representation.
///
/// Preinjective multiplicities come from the nullities of the maps
/// `V0 (x) S_k -> V1 (x) S_{k+1}`, preprojective ones from the same count on the
/// dual, and the regular part from the Smith form of the pencil over F_q[t]
/// (finite points) and over F_q[s] at `s = 0` (the point at infinity).
/// Minus reps are classified through their transposes on the same dims.
pub fn classify(x: &KronRep) -> Result<IsoClass, KronError> {
    let x = x.to_plus();
    let q = x.q();
    let mut class = IsoClass::zero(q);
    class.preinj = preinj_counts(&x);
    class.preproj = preinj_counts(&x.dual_plus());

    let mut regular: BTreeMap<ClosedPoint, Vec<u32>> = BTreeMap::new();
    for f in invariant_factors(x.pencil(false)) {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (g, e) in factor_poly(&f)? {
            add_part(&mut regular, ClosedPoint::Finite(g), e);
        }
    }
    for f in invariant_factors(x.pencil(true)) {
        let e = f.t_adic_valuation() as u32;
        if e > 0 {
            add_part(&mut regular, ClosedPoint::Infinity, e);
        }
    }
    class.regular = regular
        .into_iter()
        .map(|(pt, parts)| (pt, Partition::from_unsorted(parts)))
        .collect();

    if class.dims() != x.dims() {
        return Err(KronError::Inconsistent(format!(
            "decomposition {class} has dims {:?}, rep has {:?}",
            class.dims(),
            x.dims()
        )));
    }
    Ok(class)
}

/// Every indecomposable whose dimension vector fits inside `d`.
pub fn indecomposables_within(d: (usize, usize), q: u32) -> Vec<IndecompLabel> {
    let mut out = Vec::new();
    for k in 1..=d.1 as u32 {
        if k as usize - 1 <= d.0 {
            out.push(IndecompLabel::Preproj(k));
        }
    }
    for k in 1..=d.0 as u32 {
        if k as usize - 1 <= d.1 {
            out.push(IndecompLabel::Preinj(k));
        }
    }
    let n = d.0.min(d.1);
    if n > 0 {
        for pt in ClosedPoint::all_up_to(n, q) {
            for m in 1..=(n / pt.degree()) as u32 {
                out.push(IndecompLabel::Regular(pt.clone(), m));
            }
        }
    }
    out
}

/// Hom dimensions from every indecomposable within `d` into `x`.
pub fn fingerprint(x: &KronRep, probes: &[KronRep]) -> Result<Vec<usize>, KronError> {
    probes.iter().map(|m| hom_dim(m, x)).collect()
}

/// Classes of one dimension vector indexed by their Hom fingerprint.
#[derive(Clone, Debug)]
pub struct FingerprintTable {
    pub dims: (usize, usize),
    pub q: u32,
    probes: Vec<KronRep>,
    by_print: HashMap<Vec<usize>, Vec<IsoClass>>,
}

impl FingerprintTable {
    pub fn build(d: (usize, usize), q: u32) -> Result<Self, KronError> {
        let probes: Vec<KronRep> = indecomposables_within(d, q)
            .iter()
            .map(|l| indecomposable_rep(q, l))
            .collect();
        let mut by_print: HashMap<Vec<usize>, Vec<IsoClass>> = HashMap::new();
        for c in super::enumerate::enumerate_classes(d, q)? {
            let print = fingerprint(&representative(&c), &probes)?;
            by_print.entry(print).or_default().push(c);
        }
        Ok(FingerprintTable {
            dims: d,
            q,
            probes,
            by_print,
        })
    }

    /// True iff no two classes share a fingerprint.
    pub fn is_injective(&self) -> bool {
        self.by_print.values().all(|v| v.len() == 1)
    }

    pub fn class_count(&self) -> usize {
        self.by_print.values().map(Vec::len).sum()
    }

    pub fn classify(&self, x: &KronRep) -> Result<IsoClass, KronError> {
        let x = x.to_plus();
        if x.dims() != self.dims || x.q() != self.q {
            return Err(KronError::Shape(format!(
                "table for {:?} over F_{}, rep has {:?} over F_{}",
                self.dims,
                self.q,
                x.dims(),
                x.q()
            )));
        }
        let print = fingerprint(&x, &self.probes)?;
        match self.by_print.get(&print).map(Vec::as_slice) {
            Some([c]) => Ok(c.clone()),
            Some(many) => Err(KronError::AmbiguousFingerprint(many.len())),
            None => Err(KronError::Inconsistent("fingerprint matches no class".into())),
        }
    }
}

/// Fingerprint route: prune candidates by the pencil determinant, then match
/// Hom dimensions against every indecomposable within the dimension vector.
pub fn classify_by_fingerprint(x: &KronRep) -> Result<IsoClass, KronError> {
    let x = x.to_plus();
    let probes: Vec<KronRep> = indecomposables_within(x.dims(), x.q())
        .iter()
        .map(|l| indecomposable_rep(x.q(), l))
        .collect();
    let det = x.pencil_determinant();
    let target = fingerprint(&x, &probes)?;
    let mut hits = Vec::new();
    for c in super::enumerate::enumerate_classes(x.dims(), x.q())? {
        let r = representative(&c);
        let same_det = match (&det, r.pencil_determinant()) {
            (Some(a), Some(b)) => (a.is_zero() && b.is_zero()) || a.proportional(&b),
            (None, None) => true,
            _ => false,
        };
        if same_det && fingerprint(&r, &probes)? == target {
            hits.push(c);
        }
    }
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        0 => Err(KronError::Inconsistent("no candidate class matched".into())),
        n => Err(KronError::AmbiguousFingerprint(n)),
    }
}

fn big_pow(base: u32, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), e as usize)
}

/// `|GL_m(F_{q^e})|`.
pub fn gl_order(q: u32, e: u32, m: u32) -> BigUint {
    let big_q = big_pow(q, e as u64);
    let qm = num_traits::pow(big_q.clone(), m as usize);
    (0..m).fold(BigUint::one(), |acc, i| {
        acc * (&qm - num_traits::pow(big_q.clone(), i as usize))
    })
}

/// `|GL_{d0}(F_q)| * |GL_{d1}(F_q)|`.
pub fn group_order(q: u32, d: (usize, usize)) -> BigUint {
    gl_order(q, 1, d.0 as u32) * gl_order(q, 1, d.1 as u32)
}

/// `|Aut M| = q^r prod_i |GL_{m_i}(F_{q^{e_i}})|` with `r = dim End M - sum m_i^2 e_i`.
pub fn aut_order(c: &IsoClass) -> BigUint {
    let rep = representative(c);
    let end = hom_dim(&rep, &rep).expect("same q and orientation") as u64;
    let mut semisimple = 0u64;
    let mut acc = BigUint::one();
    for (label, m) in c.labels() {
        let e = label.residue_degree();
        semisimple += (m * m * e) as u64;
        acc *= gl_order(c.q, e, m);
    }
    acc * big_pow(c.q, end - semisimple)
}

/// `|G_V| / |Aut M|`, the number of points in the orbit.
pub fn orbit_size(c: &IsoClass) -> BigUint {
    group_order(c.q, c.dims()) / aut_order(c)
}
