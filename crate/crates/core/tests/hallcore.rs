use kronecker_hall::exactfield::{enumerate_subspaces, MatrixFq};
use kronecker_hall::generators::{indicator_all, rho, theta};
use kronecker_hall::hallcore::{
    Anchor, Calibrator, FactorOrder, HallAlgebra, HallElem, QEps, StructureStore, TwistConvention,
};
use kronecker_hall::kronrep::{
    classify, enumerate_classes, sub_and_quotient, IndecompLabel, IsoClass, KronRep, Orientation,
};
use proptest::prelude::*;

fn alg(q: u32) -> HallAlgebra {
    HallAlgebra::new(q, TwistConvention::calibrated()).unwrap()
}

fn s0(q: u32) -> IsoClass {
    IsoClass::from_labels(q, &[IndecompLabel::Preinj(1)])
}

fn s1(q: u32) -> IsoClass {
    IsoClass::from_labels(q, &[IndecompLabel::Preproj(1)])
}

#[test]
fn simple_products() {
    for q in [2, 3, 5] {
        let a = alg(q);
        let (t0, t1) = (theta(q, 0), theta(q, 1));
        // every (1,1) representation has S1 as a sub
        let all = indicator_all(q, (1, 1)).unwrap();
        assert_eq!(a.mul(&t0, &t1), all.shift(-2));
        // S0 is a sub only of the split representation
        let split = IsoClass::from_labels(q, &[IndecompLabel::Preproj(1), IndecompLabel::Preinj(1)]);
        assert_eq!(a.mul(&t1, &t0), HallElem::indicator(split, QEps::one(q)));
        // q + 1 lines in the plane, twisted by ε^-1: [2]
        let mut double = IsoClass::zero(q);
        double.add_label(IndecompLabel::Preinj(1), 2);
        assert_eq!(a.mul(&t0, &t0), HallElem::indicator(double, QEps::qint(q, 2)));
        let one = HallElem::unit(q);
        assert_eq!(a.mul(&one, &t0), t0);
        assert_eq!(a.mul(&t1, &one), t1);
    }
}

#[test]
fn rho1_is_twisted_commutator() {
    for q in [2, 3, 5, 7] {
        let a = alg(q);
        let (t0, t1) = (theta(q, 0), theta(q, 1));
        let comm = a.mul(&t0, &t1).sub(&a.mul(&t1, &t0).shift(-2));
        assert_eq!(comm, rho(q, 1).unwrap());
    }
}

fn all_points(q: u32, d: (usize, usize)) -> Vec<KronRep> {
    let cells = d.0 * d.1;
    let total = (q as usize).pow(2 * cells as u32);
    (0..total)
        .map(|mut k| {
            let mut entries: Vec<u32> = (0..2 * cells)
                .map(|_| {
                    let v = (k % q as usize) as u32;
                    k /= q as usize;
                    v
                })
                .collect();
            let second = entries.split_off(cells);
            let x1 = MatrixFq::from_flat(q, d.1, d.0, entries);
            let x2 = MatrixFq::from_flat(q, d.1, d.0, second);
            KronRep::plus(q, x1, x2).unwrap()
        })
        .collect()
}

/// `sum_W f(V/W) g(W)` over stable subspaces found by testing every pair of
/// subspaces for stability.
fn brute_raw(x: &KronRep, f: &HallElem, g: &HallElem, w: (usize, usize)) -> QEps {
    let q = x.q();
    let (d0, d1) = x.dims();
    let mut acc = QEps::zero(q);
    for w0 in enumerate_subspaces(d0, w.0, q).unwrap() {
        let i1 = w0.image_under(x.x1());
        let i2 = w0.image_under(x.x2());
        for w1 in enumerate_subspaces(d1, w.1, q).unwrap() {
            if !(w1.contains(&i1) && w1.contains(&i2)) {
                continue;
            }
            let (s, t) = sub_and_quotient(x, &w0, &w1);
            let v = &f.get(&classify(&t).unwrap()) * &g.get(&classify(&s).unwrap());
            acc += &v;
        }
    }
    acc
}

#[test]
fn product_matches_pointwise_count() {
    let q = 2;
    let a = alg(q);
    let conv = TwistConvention::calibrated();
    for d in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let points = all_points(q, d);
        for b0 in 0..=d.0 {
            for b1 in 0..=d.1 {
                let b = (b0, b1);
                let c = (d.0 - b0, d.1 - b1);
                if b == (0, 0) || c == (0, 0) {
                    continue;
                }
                let fb = enumerate_classes(b, q).unwrap();
                let gc = enumerate_classes(c, q).unwrap();
                // a generic element in each grade
                let f = HallElem::from_terms(
                    q,
                    fb.iter()
                        .enumerate()
                        .map(|(i, x)| (x.clone(), QEps::from_int(q, i as i64 + 1))),
                );
                let g = HallElem::from_terms(
                    q,
                    gc.iter()
                        .enumerate()
                        .map(|(i, x)| (x.clone(), QEps::from_ratio(q, 1, i as i64 + 2))),
                );
                let prod = a.mul(&f, &g);
                let twist = conv.t_form(b, c);
                for x in &points {
                    let expect = brute_raw(x, &f, &g, c).shift(twist);
                    assert_eq!(prod.get(&classify(x).unwrap()), expect, "d={d:?} b={b:?}");
                }
            }
        }
    }
}

fn generic(q: u32, d: (usize, usize), seed: i64) -> HallElem {
    let classes = enumerate_classes(d, q).unwrap();
    HallElem::from_terms(
        q,
        classes.into_iter().enumerate().map(|(i, c)| {
            let a = QEps::from_int(q, (i as i64 * 7 + seed) % 5 - 2);
            let b = QEps::eps(q).scale_int((i as i64 + seed) % 3 - 1);
            (c, &a + &b)
        }),
    )
}

#[test]
fn associativity() {
    for q in [2, 3] {
        let a = alg(q);
        let grades = [(1, 0), (0, 1), (1, 1), (1, 2)];
        for (i, &b) in grades.iter().enumerate() {
            for (j, &c) in grades.iter().enumerate() {
                for (k, &e) in grades.iter().enumerate() {
                    if b.0 + c.0 + e.0 > 2 || b.1 + c.1 + e.1 > 3 {
                        continue;
                    }
                    let (f, g, h) = (
                        generic(q, b, i as i64),
                        generic(q, c, j as i64 + 1),
                        generic(q, e, k as i64 + 2),
                    );
                    let left = a.mul(&a.mul(&f, &g), &h);
                    let right = a.mul(&f, &a.mul(&g, &h));
                    assert_eq!(left, right, "q={q} {b:?} {c:?} {e:?}");
                }
            }
        }
    }
}

#[test]
fn coproduct_by_hall_numbers_matches_extensions() {
    for q in [2, 3] {
        let a = alg(q);
        let dims: &[(usize, usize)] = if q == 2 {
            &[(1, 1), (2, 1), (1, 2), (2, 2)]
        } else {
            &[(1, 1), (2, 1), (1, 2)]
        };
        for &d in dims {
            let f = generic(q, d, 3);
            for b0 in 0..=d.0 {
                for b1 in 0..=d.1 {
                    let (b, c) = ((b0, b1), (d.0 - b0, d.1 - b1));
                    let hall = a.coproduct(&f, b, c).unwrap();
                    let direct = a.coproduct_direct(&f, b, c).unwrap();
                    assert!(hall.sub(&direct).is_zero(), "q={q} d={d:?} b={b:?}");
                }
            }
        }
    }
}

#[test]
fn inner_product_examples() {
    for q in [2, 3, 5] {
        let a = alg(q);
        let (t0, t1) = (theta(q, 0), theta(q, 1));
        assert_eq!(a.inner(&t0, &t0).unwrap(), QEps::from_ratio(q, q as i64, q as i64 - 1));
        assert!(a.inner(&t0, &t1).unwrap().is_zero());
    }
}

#[test]
fn regular_elements_commute() {
    let q = 2;
    let a = alg(q);
    let r = |k| rho(q, k).unwrap();
    assert_eq!(a.mul(&r(1), &r(2)), a.mul(&r(2), &r(1)));
    let f = generic(q, (1, 1), 1).restrict_regular();
    let g = generic(q, (1, 1), 4).restrict_regular();
    assert_eq!(a.mul(&f, &g), a.mul(&g, &f));
}

#[test]
fn sigma1_examples() {
    let q = 3;
    let a = alg(q);
    // S0 reflects to the indecomposable of dimension (1, 2)
    let f = HallElem::indicator(s0(q), QEps::one(q)).with_orientation(Orientation::Minus);
    let g = a.sigma1(&f).unwrap();
    let p2 = IsoClass::from_labels(q, &[IndecompLabel::Preinj(1)]);
    let expect_class = g.support().next().unwrap().clone();
    assert_eq!(expect_class.dims(), (1, 2));
    assert_ne!(expect_class, p2);
    assert_eq!(g.get(&expect_class), QEps::eps_pow(q, 4));
    assert_eq!(g.orientation(), Orientation::Minus);
    // S1 violates the kernel condition
    let bad = HallElem::indicator(s1(q), QEps::one(q)).with_orientation(Orientation::Minus);
    assert!(a.sigma1(&bad).is_err());
}

#[test]
fn structure_cache_round_trip() {
    let q = 2;
    let dir = tempfile::tempdir().unwrap();
    let a = alg(q);
    let expect = a.mul(&generic(q, (1, 1), 0), &generic(q, (1, 1), 2));
    let files = a.store().save(dir.path(), "t").unwrap();
    assert!(!files.is_empty());
    let fresh = StructureStore::new(q);
    assert!(fresh.load(dir.path(), "t").unwrap() > 0);
    let b = HallAlgebra::with_store(std::sync::Arc::new(fresh), TwistConvention::calibrated());
    assert_eq!(b.mul(&generic(q, (1, 1), 0), &generic(q, (1, 1), 2)), expect);
}

#[test]
fn calibrated_convention_passes_anchors_and_perturbation_fails() {
    let cal = Calibrator::new(&[2], 2).unwrap();
    let conv = TwistConvention::calibrated();
    let report = cal.evaluate(&conv, &Anchor::STANDARD);
    assert!(report.passes(), "{report:?}");
    // raising t01 shifts the terms of the recursion unevenly
    let bad = cal.evaluate(&conv.perturbed(), &[Anchor::RhoRecursion]);
    assert!(!bad.outcomes[0].pass);
    // raising t11 shifts every product term of grade (2,2) by ε
    let mut shifted = conv;
    shifted.t[1][1] += 1;
    let bad = cal.evaluate(&shifted, &[Anchor::RhoRecursion]);
    let o = &bad.outcomes[0];
    assert!(!o.pass);
    assert_eq!(o.discrepancy, Some(-1), "{o:?}");
    assert_eq!(conv.factor_order, FactorOrder::QuotFirst);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn bilinear_over_scalars(a0 in -3i64..3, b0 in -3i64..3, k in -4i64..4) {
        let q = 2;
        let a = alg(q);
        let f = generic(q, (1, 1), a0.rem_euclid(5));
        let g = generic(q, (0, 1), b0.rem_euclid(5));
        let s = QEps::eps_pow(q, k);
        prop_assert_eq!(a.mul(&f.scale(&s), &g), a.mul(&f, &g).scale(&s));
    }
}
