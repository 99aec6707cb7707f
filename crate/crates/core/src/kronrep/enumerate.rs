//! Enumeration of classes, index sets and stable subspaces.

use std::collections::BTreeMap;

use crate::exactfield::{enumerate_subspaces, ClosedPoint, MatrixFq, SubspaceFq};
use crate::symfun::{partitions_of, Partition};

use super::label::{CbIndex, IndecompLabel, IsoClass};
use super::rep::{KronRep, Orientation};
use super::KronError;

/// Hard ceiling on `d0 + d1` for enumeration.
pub const MAX_TOTAL_DIM: usize = 10;

fn check_bound(d: (usize, usize)) -> Result<(), KronError> {
    if d.0 + d.1 > MAX_TOTAL_DIM {
        return Err(KronError::BoundExceeded {
            dims: d,
            max: MAX_TOTAL_DIM,
        });
    }
    Ok(())
}

type Mults = (BTreeMap<u32, u32>, BTreeMap<u32, u32>);

/// All choices of preprojective/preinjective multiplicities fitting in `d`
/// whose complement is a square `(n, n)`, paired with that `n`.
fn nonregular_parts(d: (usize, usize)) -> Vec<(Mults, usize)> {
    let mut labels = Vec::new();
    for k in 1..=d.1 as u32 {
        labels.push(IndecompLabel::Preproj(k));
    }
    for k in 1..=d.0 as u32 {
        labels.push(IndecompLabel::Preinj(k));
    }
    let mut out = Vec::new();
    let mut cur: Vec<u32> = vec![0; labels.len()];
    fn rec(
        i: usize,
        rest: (usize, usize),
        labels: &[IndecompLabel],
        cur: &mut Vec<u32>,
        out: &mut Vec<(Mults, usize)>,
    ) {
        if i == labels.len() {
            if rest.0 == rest.1 {
                let mut pp = BTreeMap::new();
                let mut pi = BTreeMap::new();
                for (l, &m) in labels.iter().zip(cur.iter()) {
                    if m == 0 {
                        continue;
                    }
                    match l {
                        IndecompLabel::Preproj(k) => pp.insert(*k, m),
                        IndecompLabel::Preinj(k) => pi.insert(*k, m),
                        IndecompLabel::Regular(..) => unreachable!(),
                    };
                }
                out.push(((pp, pi), rest.0));
            }
            return;
        }
        let (a, b) = labels[i].dims();
        let mut m = 0;
        let mut r = rest;
        loop {
            cur[i] = m;
            rec(i + 1, r, labels, cur, out);
            if r.0 < a || r.1 < b {
                break;
            }
            r = (r.0 - a, r.1 - b);
            m += 1;
        }
        cur[i] = 0;
    }
    rec(0, d, &labels, &mut cur, &mut out);
    out
}

/// All regular parts of total size `n`: a partition at each of finitely many
/// closed points with `sum deg * |lambda| = n`.
pub fn regular_parts(n: usize, q: u32) -> Vec<BTreeMap<ClosedPoint, Partition>> {
    let points = if n == 0 {
        Vec::new()
    } else {
        ClosedPoint::all_up_to(n, q)
    };
    let mut out = Vec::new();
    fn rec(
        i: usize,
        rest: usize,
        points: &[ClosedPoint],
        cur: &mut BTreeMap<ClosedPoint, Partition>,
        out: &mut Vec<BTreeMap<ClosedPoint, Partition>>,
    ) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if i == points.len() {
            return;
        }
        let deg = points[i].degree();
        rec(i + 1, rest, points, cur, out);
        for w in 1..=rest / deg {
            for lam in partitions_of(w as u32) {
                cur.insert(points[i].clone(), lam);
                rec(i + 1, rest - w * deg, points, cur, out);
            }
        }
        cur.remove(&points[i]);
    }
    rec(0, n, &points, &mut BTreeMap::new(), &mut out);
    out
}

/// Every isomorphism class of dimension vector `d` over F_q, sorted.
pub fn enumerate_classes(d: (usize, usize), q: u32) -> Result<Vec<IsoClass>, KronError> {
    check_bound(d)?;
    crate::exactfield::check_prime(q)?;
    let mut out = Vec::new();
    for ((pp, pi), n) in nonregular_parts(d) {
        for reg in regular_parts(n, q) {
            out.push(IsoClass {
                q,
                preproj: pp.clone(),
                preinj: pi.clone(),
                regular: reg,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// The index set `((r_i), (s_i), lambda)` for dimension vector `d`.
pub fn enumerate_cb_index(d: (usize, usize)) -> Result<Vec<CbIndex>, KronError> {
    check_bound(d)?;
    let mut out = Vec::new();
    for ((pp, pi), n) in nonregular_parts(d) {
        for lambda in partitions_of(n as u32) {
            out.push(CbIndex {
                preproj: pp.clone(),
                preinj: pi.clone(),
                lambda,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// The subrepresentation on `(w0, w1)` in the RREF bases and the induced
/// quotient on the complements spanned by the non-pivot standard vectors.
pub fn sub_and_quotient(x: &KronRep, w0: &SubspaceFq, w1: &SubspaceFq) -> (KronRep, KronRep) {
    let q = x.q();
    let (d0, d1) = x.dims();
    let (b0, b1) = (w0.dim(), w1.dim());
    let comp0 = w0.complement_coords();
    let comp1 = w1.complement_coords();
    let mut sub = [MatrixFq::zeros(q, b1, b0), MatrixFq::zeros(q, b1, b0)];
    let mut quot = [
        MatrixFq::zeros(q, d1 - b1, d0 - b0),
        MatrixFq::zeros(q, d1 - b1, d0 - b0),
    ];
    for (i, xi) in [x.x1(), x.x2()].into_iter().enumerate() {
        for j in 0..b0 {
            let v = xi.mul_vec(w0.basis().row(j));
            for (r, c) in w1.coords(&v).into_iter().enumerate() {
                sub[i].set(r, j, c);
            }
        }
        for (j, &c0) in comp0.iter().enumerate() {
            let mut v: Vec<u32> = (0..d1).map(|r| xi.get(r, c0)).collect();
            w1.reduce(&mut v);
            for (r, &c1) in comp1.iter().enumerate() {
                quot[i].set(r, j, v[c1]);
            }
        }
    }
    let [s1, s2] = sub;
    let [t1, t2] = quot;
    (
        KronRep::plus(q, s1, s2).expect("shapes match"),
        KronRep::plus(q, t1, t2).expect("shapes match"),
    )
}

/// Calls `visit(w0, w1)` for every stable pair with `dim W = b`.
pub fn for_each_stable_pair(
    x: &KronRep,
    b: (usize, usize),
    mut visit: impl FnMut(&SubspaceFq, &SubspaceFq),
) -> Result<(), KronError> {
    if x.orientation() != Orientation::Plus {
        return Err(KronError::Orientation);
    }
    let (d0, d1) = x.dims();
    if b.0 > d0 || b.1 > d1 {
        return Err(KronError::Shape(format!("sub-dimension {b:?} exceeds {:?}", x.dims())));
    }
    for w0 in enumerate_subspaces(d0, b.0, x.q())? {
        let image = w0.image_under(x.x1()).join(&w0.image_under(x.x2()));
        if image.dim() > b.1 {
            continue;
        }
        for w1 in image.superspaces(b.1)? {
            visit(&w0, &w1);
        }
    }
    Ok(())
}

/// Every x-stable graded subspace of dimension `b`, as (sub, quotient).
pub fn stable_subspaces(x: &KronRep, b: (usize, usize)) -> Result<Vec<(KronRep, KronRep)>, KronError> {
    let mut out = Vec::new();
    for_each_stable_pair(x, b, |w0, w1| out.push(sub_and_quotient(x, w0, w1)))?;
    Ok(out)
}

/// Number of stable subspaces of dimension `b`.
pub fn count_stable(x: &KronRep, b: (usize, usize)) -> Result<u64, KronError> {
    let mut n = 0;
    for_each_stable_pair(x, b, |_, _| n += 1)?;
    Ok(n)
}
