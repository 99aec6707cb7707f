use std::collections::{BTreeMap, HashMap};

use kronecker_hall::exactfield::{factor_binary_form, ClosedPoint, MatrixFq, Poly};
use kronecker_hall::kronrep::*;
use kronecker_hall::symfun::Partition;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

fn m(q: u32, rows: &[Vec<i64>]) -> MatrixFq {
    MatrixFq::from_rows(q, rows).unwrap()
}

fn pt(q: u32, c: &[u32]) -> ClosedPoint {
    ClosedPoint::finite(Poly::new(q, c.to_vec())).unwrap()
}

fn all_matrices(q: u32, rows: usize, cols: usize) -> Vec<MatrixFq> {
    let n = rows * cols;
    let total = (q as usize).pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let data = (0..n)
                .map(|_| {
                    let v = (idx % q as usize) as u32;
                    idx /= q as usize;
                    v
                })
                .collect();
            MatrixFq::from_flat(q, rows, cols, data)
        })
        .collect()
}

fn invertible(q: u32, n: usize) -> Vec<MatrixFq> {
    all_matrices(q, n, n)
        .into_iter()
        .filter(|g| g.is_invertible())
        .collect()
}

#[test]
fn representative_examples() {
    let p1 = representative(&IsoClass::from_labels(2, &[IndecompLabel::Preproj(1)]));
    assert_eq!(p1.dims(), (0, 1));
    let r = representative(&IsoClass::from_labels(2, &[IndecompLabel::Regular(pt(2, &[0, 1]), 1)]));
    assert_eq!(r.x1(), &m(2, &[vec![1]]));
    assert_eq!(r.x2(), &m(2, &[vec![0]]));
    let det = r.pencil_determinant().unwrap();
    assert_eq!(factor_binary_form(&det).unwrap(), vec![(pt(2, &[0, 1]), 1)]);
    let i2 = representative(&IsoClass::from_labels(3, &[IndecompLabel::Preinj(2)]));
    assert_eq!(i2.x1(), &m(3, &[vec![1, 0]]));
    assert_eq!(i2.x2(), &m(3, &[vec![0, 1]]));
    assert_ne!(i2.x1().kernel(), i2.x2().kernel());
}

#[test]
fn classify_examples() {
    let zero = KronRep::zero(2, (1, 1), Orientation::Plus);
    let c = classify(&zero).unwrap();
    assert_eq!(
        c,
        IsoClass::from_labels(2, &[IndecompLabel::Preproj(1), IndecompLabel::Preinj(1)])
    );
    let id = MatrixFq::identity(2, 2);
    let c = classify(&KronRep::plus(2, id.clone(), id).unwrap()).unwrap();
    let mut want = IsoClass::zero(2);
    want.regular.insert(pt(2, &[1, 1]), Partition::new(vec![1, 1]).unwrap());
    assert_eq!(c, want);
}

#[test]
fn round_trip_small() {
    for q in [2, 3] {
        for d0 in 0..=3 {
            for d1 in 0..=3 {
                for c in enumerate_classes((d0, d1), q).unwrap() {
                    assert_eq!(c.dims(), (d0, d1));
                    assert_eq!(classify(&representative(&c)).unwrap(), c, "{c}");
                }
            }
        }
    }
}

#[test]
fn enumerate_examples() {
    assert_eq!(enumerate_classes((1, 1), 2).unwrap().len(), 4);
    assert_eq!(enumerate_classes((1, 0), 5).unwrap().len(), 1);
    assert!(enumerate_classes((6, 5), 2).is_err());
}

#[test]
fn orbit_sizes_partition_the_space() {
    for q in [2, 3] {
        for d0 in 0..=3usize {
            for d1 in 0..=3usize {
                let total: BigUint = enumerate_classes((d0, d1), q).unwrap().iter().map(orbit_size).sum();
                assert_eq!(total, num_traits::pow(BigUint::from(q), 2 * d0 * d1), "{q} {d0} {d1}");
            }
        }
    }
}

#[test]
fn aut_order_examples() {
    let p1 = IsoClass::from_labels(5, &[IndecompLabel::Preproj(1)]);
    assert_eq!(aut_order(&p1), BigUint::from(4u32));
    let s = IsoClass::from_labels(2, &[IndecompLabel::Preproj(1), IndecompLabel::Preinj(1)]);
    assert_eq!(orbit_size(&s), BigUint::from(1u32));
    let total: BigUint = enumerate_classes((1, 1), 2).unwrap().iter().map(orbit_size).sum();
    assert_eq!(total, BigUint::from(4u32));
}

/// Counts pairs of invertible matrices commuting with the rep.
fn brute_aut(x: &KronRep) -> u64 {
    let q = x.q();
    let (d0, d1) = x.dims();
    let g0s = invertible(q, d0);
    let g1s = invertible(q, d1);
    let mut n = 0;
    for g0 in &g0s {
        let a1 = x.x1().mul(g0).unwrap();
        let a2 = x.x2().mul(g0).unwrap();
        for g1 in &g1s {
            if g1.mul(x.x1()).unwrap() == a1 && g1.mul(x.x2()).unwrap() == a2 {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn aut_order_matches_unit_count() {
    for (q, dims) in [
        (2, vec![(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)]),
        (3, vec![(1, 1), (1, 2), (2, 2)]),
    ] {
        for d in dims {
            for c in enumerate_classes(d, q).unwrap() {
                let rep = representative(&c);
                if hom_dim(&rep, &rep).unwrap() > 5 {
                    continue;
                }
                assert_eq!(aut_order(&c).to_u64().unwrap(), brute_aut(&rep), "{c}");
            }
        }
    }
}

/// Orbits of `(GL_2 x GL_2)` on all 256 pairs over F_2 by union-find.
#[test]
fn brute_force_orbits_at_2_2() {
    let q = 2;
    let mats = all_matrices(q, 2, 2);
    let index: HashMap<MatrixFq, usize> = mats.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let key = |a: &MatrixFq, b: &MatrixFq| index[a] * mats.len() + index[b];
    let n = mats.len() * mats.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    let gl = invertible(q, 2);
    let inv: Vec<MatrixFq> = gl
        .iter()
        .map(|g| {
            gl.iter()
                .find(|h| g.mul(h).unwrap() == MatrixFq::identity(q, 2))
                .unwrap()
                .clone()
        })
        .collect();
    for a in &mats {
        for b in &mats {
            let src = key(a, b);
            for g0i in &inv {
                for g1 in &gl {
                    let a2 = g1.mul(a).unwrap().mul(g0i).unwrap();
                    let b2 = g1.mul(b).unwrap().mul(g0i).unwrap();
                    let (r1, r2) = (find(&mut parent, src), find(&mut parent, key(&a2, &b2)));
                    parent[r1] = r2;
                }
            }
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        *sizes.entry(r).or_insert(0) += 1;
    }
    let mut brute: Vec<usize> = sizes.into_values().collect();
    brute.sort();
    let classes = enumerate_classes((2, 2), q).unwrap();
    let mut ours: Vec<usize> = classes.iter().map(|c| orbit_size(c).to_usize().unwrap()).collect();
    ours.sort();
    assert_eq!(brute, ours);
    // and classification agrees pointwise with orbit membership
    let mut seen: HashMap<IsoClass, usize> = HashMap::new();
    for a in &mats {
        for b in &mats {
            let c = classify(&KronRep::plus(q, a.clone(), b.clone()).unwrap()).unwrap();
            let r = find(&mut parent, key(a, b));
            assert_eq!(*seen.entry(c).or_insert(r), r);
        }
    }
    assert_eq!(seen.len(), classes.len());
}

#[test]
fn hom_examples() {
    let q = 2;
    let rep = |l| indecomposable_rep(q, &l);
    assert_eq!(
        hom_dim(&rep(IndecompLabel::Preinj(2)), &rep(IndecompLabel::Preproj(2))).unwrap(),
        0
    );
    assert_eq!(
        hom_dim(&rep(IndecompLabel::Preproj(1)), &rep(IndecompLabel::Preproj(2))).unwrap(),
        2
    );
    for k in 1..=4 {
        let i = rep(IndecompLabel::Preinj(k));
        assert_eq!(hom_dim(&i, &i).unwrap(), 1);
    }
}

fn kind(l: &IndecompLabel) -> u8 {
    match l {
        IndecompLabel::Preproj(_) => 0,
        IndecompLabel::Regular(..) => 1,
        IndecompLabel::Preinj(_) => 2,
    }
}

#[test]
fn hom_and_ext_vanishing_tables() {
    for q in [2, 3] {
        let labels = indecomposables_within((4, 4), q);
        let reps: Vec<KronRep> = labels.iter().map(|l| indecomposable_rep(q, l)).collect();
        for (la, a) in labels.iter().zip(&reps) {
            for (lb, b) in labels.iter().zip(&reps) {
                // Hom(I,P) = Hom(I,R) = Hom(R,P) = 0
                if kind(la) > kind(lb) {
                    assert_eq!(hom_dim(a, b).unwrap(), 0, "{la} -> {lb}");
                }
                match (la, lb) {
                    (IndecompLabel::Preinj(j), IndecompLabel::Preinj(k)) if j >= k => {
                        assert_eq!(ext_dim(a, b).unwrap(), 0, "Ext({la},{lb})")
                    }
                    (IndecompLabel::Preproj(k), IndecompLabel::Preproj(j)) if j >= k => {
                        assert_eq!(ext_dim(a, b).unwrap(), 0, "Ext({la},{lb})")
                    }
                    _ => {}
                }
            }
        }
    }
}

#[test]
fn fingerprint_is_injective_and_agrees() {
    for (q, dmax) in [(2, 3), (3, 2)] {
        for d0 in 0..=dmax {
            for d1 in 0..=dmax {
                let table = FingerprintTable::build((d0, d1), q).unwrap();
                assert!(table.is_injective(), "{d0} {d1} q={q}");
                for c in enumerate_classes((d0, d1), q).unwrap() {
                    assert_eq!(table.classify(&representative(&c)).unwrap(), c);
                }
            }
        }
    }
    let x = KronRep::zero(2, (1, 1), Orientation::Plus);
    assert_eq!(classify_by_fingerprint(&x).unwrap(), classify(&x).unwrap());
}

#[test]
fn is_regular_examples() {
    assert!(!KronRep::zero(2, (1, 1), Orientation::Plus).is_regular());
    let inf2 = IsoClass::from_labels(3, &[IndecompLabel::Regular(ClosedPoint::Infinity, 2)]);
    assert!(representative(&inf2).is_regular());
    assert!(!indecomposable_rep(3, &IndecompLabel::Preproj(2)).is_regular());
}

#[test]
fn stable_subspace_examples() {
    let x = KronRep::zero(3, (1, 1), Orientation::Plus);
    assert_eq!(stable_subspaces(&x, (1, 0)).unwrap().len(), 1);
    let x = KronRep::zero(3, (2, 0), Orientation::Plus);
    assert_eq!(stable_subspaces(&x, (1, 0)).unwrap().len(), 4);
    let mut c = IsoClass::zero(2);
    c.add_label(IndecompLabel::Regular(pt(2, &[0, 1]), 1), 1);
    c.add_label(IndecompLabel::Regular(pt(2, &[1, 1]), 1), 1);
    let pairs = stable_subspaces(&representative(&c), (1, 1)).unwrap();
    let regular_subs = pairs.iter().filter(|(s, _)| s.is_regular()).count();
    assert_eq!(regular_subs, 2);
    // sub and quotient classes add up to the whole
    for (s, t) in pairs {
        assert_eq!(s.dims(), (1, 1));
        assert_eq!(t.dims(), (1, 1));
    }
}

#[test]
fn reflection_examples() {
    let q = 3;
    let s0 = KronRep::zero(q, (1, 0), Orientation::Minus);
    let r = reflect_at_1(&s0).unwrap();
    assert_eq!(r.dims(), (1, 2));
    assert_eq!(r.orientation(), Orientation::Plus);
    assert_eq!(
        classify(&r).unwrap(),
        IsoClass::from_labels(q, &[IndecompLabel::Preproj(2)])
    );
    for k in 1..=4 {
        let minus = indecomposable_rep(q, &IndecompLabel::Preinj(k)).to_plus();
        let minus = KronRep::new(
            q,
            minus.dims(),
            minus.x1().transpose(),
            minus.x2().transpose(),
            Orientation::Minus,
        )
        .unwrap();
        assert_eq!(
            classify(&minus).unwrap(),
            IsoClass::from_labels(q, &[IndecompLabel::Preinj(k)])
        );
        let r = reflect_at_1(&minus).unwrap();
        assert_eq!(r.dims(), (k as usize, k as usize + 1));
        assert_eq!(
            classify(&r).unwrap(),
            IsoClass::from_labels(q, &[IndecompLabel::Preproj(k + 1)])
        );
        assert_eq!(hom_dim(&r, &r).unwrap(), 1);
    }
    let bad = KronRep::zero(q, (0, 1), Orientation::Minus);
    assert_eq!(reflect_at_1(&bad), Err(KronError::KernelCondition));
}

#[test]
fn reflection_output_is_exact_and_spanning() {
    let q = 2;
    for d in [(1, 1), (2, 1), (2, 2), (2, 3), (3, 2)] {
        for c in enumerate_classes(d, q).unwrap() {
            let plus = representative(&c);
            let minus = KronRep::new(q, d, plus.x1().transpose(), plus.x2().transpose(), Orientation::Minus).unwrap();
            assert_eq!(classify(&minus).unwrap(), c);
            let ok = kernel_condition(&minus);
            assert_eq!(ok, !c.preproj.contains_key(&1), "{c}");
            if !ok {
                continue;
            }
            let r = reflect_at_1(&minus).unwrap();
            assert_eq!(r.dims(), (d.0, 2 * d.0 - d.1));
            let m = MatrixFq::vstack(minus.x1(), minus.x2());
            let qm = MatrixFq::block(r.x1(), r.x2(), &MatrixFq::zeros(q, 0, d.0), &MatrixFq::zeros(q, 0, d.0));
            assert!(qm.mul(&m).unwrap().is_zero());
            assert_eq!(qm.rank(), 2 * d.0 - d.1);
        }
    }
}

#[test]
fn tau_is_dual_on_classes() {
    let q = 2;
    for d0 in 0..=3 {
        for d1 in 0..=3 {
            for c in enumerate_classes((d0, d1), q).unwrap() {
                let x = representative(&c);
                let t = x.transpose_tau();
                assert_eq!(t.dims(), (d1, d0));
                assert_eq!(t.transpose_tau(), x);
                assert_eq!(classify(&t).unwrap(), c.dual());
            }
        }
    }
}

#[test]
fn cb_index_counts() {
    assert_eq!(enumerate_cb_index((1, 1)).unwrap().len(), 2);
    assert_eq!(enumerate_cb_index((1, 0)).unwrap().len(), 1);
    let imaginary = |d| {
        enumerate_cb_index(d)
            .unwrap()
            .into_iter()
            .filter(|i| i.preproj.is_empty() && i.preinj.is_empty())
            .count()
    };
    assert_eq!(imaginary((2, 2)), 2);
    assert_eq!(imaginary((4, 4)), 5);
    for i in enumerate_cb_index((3, 2)).unwrap() {
        assert_eq!(i.dims(), (3, 2));
    }
}

#[test]
fn isoclass_json_round_trip() {
    for c in enumerate_classes((2, 2), 3).unwrap() {
        let v = c.to_json();
        assert_eq!(IsoClass::from_json(&v).unwrap(), c);
    }
    let v = serde_json::json!({"q":2,"preproj":[[1,1]],"preinj":[[1,1]],"regular":[]});
    let c = IsoClass::from_json(&v).unwrap();
    assert_eq!(c.dims(), (1, 1));
    let v = serde_json::json!({"q":2,"regular":[{"point":"inf","partition":[2,1]}]});
    assert_eq!(IsoClass::from_json(&v).unwrap().dims(), (3, 3));
    assert!(IsoClass::from_json(&serde_json::json!({"q":4})).is_err());
    assert!(IsoClass::from_json(&serde_json::json!({"q":2,"regular":[{"point":[1,0,1],"partition":[1]}]})).is_err());
}
