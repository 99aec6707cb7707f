use kronecker_hall::generators::{gamma, mu, rho, theta, Generators, Tag};
use kronecker_hall::hallcore::{HallAlgebra, HallElem, QEps, TwistConvention};
use kronecker_hall::kronrep::{enumerate_classes, IndecompLabel, IsoClass};
use kronecker_hall::symfun::Partition;

fn gens(q: u32) -> Generators {
    Generators::new(HallAlgebra::new(q, TwistConvention::calibrated()).unwrap())
}

fn part(p: &[u32]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

#[test]
fn dense_orbit_generators() {
    let q = 2;
    assert_eq!(gamma(q, 0), theta(q, 0));
    assert_eq!(mu(q, 0), theta(q, 1));
    // dim E_V = 2·2·1 = 4 at dimension (2,1)
    let i2 = IsoClass::from_labels(q, &[IndecompLabel::Preinj(2)]);
    assert_eq!(gamma(q, 1), HallElem::indicator(i2, QEps::eps_pow(q, -4)));
    let p2 = IsoClass::from_labels(q, &[IndecompLabel::Preproj(2)]);
    assert_eq!(mu(q, 1), HallElem::indicator(p2, QEps::eps_pow(q, -4)));
}

#[test]
fn rho_examples() {
    let q = 2;
    assert_eq!(rho(q, 0).unwrap(), HallElem::unit(q));
    let r1 = rho(q, 1).unwrap();
    let half = QEps::from_ratio(q, 1, 2);
    let classes = enumerate_classes((1, 1), q).unwrap();
    assert_eq!(classes.len(), 4);
    for c in classes {
        let want = if c.is_regular() { half.clone() } else { QEps::zero(q) };
        assert_eq!(r1.get(&c), want, "{c}");
    }
    let regular2 = enumerate_classes((2, 2), q)
        .unwrap()
        .into_iter()
        .filter(IsoClass::is_regular)
        .count();
    assert_eq!(rho(q, 2).unwrap().len(), regular2);
}

#[test]
fn phi_and_ptilde() {
    for q in [2, 3] {
        let g = gens(q);
        let alg = g.algebra();
        let (t0, t1) = (g.theta(0), g.theta(1));
        let phi1 = alg.mul(&t0, &t1).sub(&alg.mul(&t1, &t0).shift(-2));
        assert_eq!(g.phi(1).unwrap(), phi1);
        assert_eq!(g.phi(1).unwrap(), g.rho(1).unwrap());
        for k in 1..=3 {
            assert!(g.phi(k).unwrap().is_regular_supported(), "phi {k} q={q}");
            assert!(g.eta(k).unwrap().is_regular_supported(), "eta {k} q={q}");
        }
        assert_eq!(g.ptilde(0).unwrap(), HallElem::unit(q));
        assert_eq!(g.ptilde(1).unwrap(), g.rho(1).unwrap());
        assert_eq!(g.ptilde(3).unwrap(), g.rho(3).unwrap());
        assert_eq!(g.eta(1).unwrap(), g.rho(1).unwrap());
    }
}

#[test]
fn schur_functions() {
    let g = gens(2);
    let alg = g.algebra();
    for n in 1..=3 {
        assert_eq!(g.schur_of(&part(&[n])).unwrap(), g.rho(n).unwrap());
    }
    let r1 = g.rho(1).unwrap();
    let want = alg.mul(&r1, &r1).sub(&g.rho(2).unwrap());
    assert_eq!(g.schur_of(&part(&[1, 1])).unwrap(), want);
}

#[test]
fn tags_and_memo() {
    let g = gens(3);
    assert_eq!(Tag::Gamma(2).grade(), (3, 2));
    assert_eq!(Tag::Mu(2).grade(), (2, 3));
    assert_eq!(Tag::Rho(2).grade(), (2, 2));
    let a = g.get(&Tag::Rho(2)).unwrap();
    let b = g.get(&Tag::Rho(2)).unwrap();
    assert_eq!(a, b);
    let named = g.named(Tag::Phi(1)).unwrap();
    assert_eq!(named.to_json()["q"], 3);
}
