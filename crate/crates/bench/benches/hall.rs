use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use kronecker_hall::generators::{gamma, mu, rho};
use kronecker_hall::hallcore::{calibrate, compute_section, HallAlgebra, TwistConvention};
use kronecker_hall::kronrep::{classify, enumerate_classes, representative};
use kronecker_hall::verify::Checker;

fn classification(c: &mut Criterion) {
    let reps: Vec<_> = enumerate_classes((3, 3), 3)
        .unwrap()
        .iter()
        .map(representative)
        .collect();
    c.bench_function("classify all (3,3) classes, q=3", |b| {
        b.iter(|| {
            reps.iter()
                .filter(|x| classify(black_box(x)).unwrap().is_regular())
                .count()
        })
    });
}

fn structure_constants(c: &mut Criterion) {
    let classes = enumerate_classes((2, 2), 3).unwrap();
    c.bench_function("sections (1,1) of all (2,2) classes, q=3", |b| {
        b.iter(|| {
            classes
                .iter()
                .map(|z| compute_section(black_box(z), (1, 1)).unwrap().len())
                .sum::<usize>()
        })
    });
}

fn products(c: &mut Criterion) {
    let q = 2;
    let (g, m) = (gamma(q, 1), mu(q, 1));
    // fresh algebra per batch so the cache does not hide the counting
    c.bench_function("gamma1*mu1 cold, q=2", |b| {
        b.iter_batched(
            || HallAlgebra::new(q, TwistConvention::calibrated()).unwrap(),
            |alg| alg.mul(&g, &m),
            BatchSize::SmallInput,
        )
    });
    let alg = HallAlgebra::new(q, TwistConvention::calibrated()).unwrap();
    let r2 = rho(q, 2).unwrap();
    alg.mul(&r2, &r2);
    c.bench_function("rho2*rho2 warm, q=2", |b| {
        b.iter(|| alg.mul(black_box(&r2), black_box(&r2)))
    });
}

fn checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("checks");
    group.sample_size(10);
    group.bench_function("relation n=3, q=2", |b| {
        b.iter_batched(
            || Checker::new(2, TwistConvention::calibrated()).unwrap(),
            |ck| ck.check_relation(3).unwrap().pass,
            BatchSize::SmallInput,
        )
    });
    group.bench_function("calibration search at q=2,3", |b| {
        b.iter(|| calibrate(&[2, 3]).unwrap().survivors.len())
    });
    group.finish();
}

criterion_group!(benches, classification, structure_constants, products, checks);
criterion_main!(benches);
