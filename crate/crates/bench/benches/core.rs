use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gca_core::*;
use std::hint::black_box;

fn scalar_mul(c: &mut Criterion) {
    let ctx = ScalarContext::new(12, 2).unwrap();
    let a = (0..6).fold(Scalar::zero(&ctx), |acc, k| {
        &acc + &Scalar::root_monomial(&ctx, &Rational::new(k + 1, 3).unwrap(), k, &[k as i32 - 2, 1]).unwrap()
    });
    let b = &a + &Scalar::omega_pow(&ctx, 5);
    c.bench_function("scalar_mul_q12", |bench| bench.iter(|| black_box(&a) * black_box(&b)));
}

fn coboundary(c: &mut Criterion) {
    let mut group = c.benchmark_group("coboundary_f_gca");
    for (n, m) in [(2u32, 3usize), (3, 2), (4, 2), (3, 3)] {
        let f = build_f_gca(&GcaParams::symbolic(n, m).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}x{m}")), &f, |bench, f| {
            bench.iter(|| f.coboundary().is_3cocycle())
        });
    }
    group.finish();
}

fn weak_hopf(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_weak_hopf_gca");
    group.sample_size(10);
    for (n, m) in [(2u32, 2usize), (3, 2), (2, 3)] {
        let p = GcaParams::symbolic(n, m).unwrap();
        let h = gca_weak_hopf(&p).unwrap();
        let phi = h.algebra().phi().clone();
        let r = gca_braiding_direct(&p).unwrap();
        group.bench_function(BenchmarkId::from_parameter(format!("{n}x{m}")), |bench| {
            bench.iter(|| verify_weak_hopf(&h, &phi, &r).unwrap().all_pass())
        });
    }
    group.finish();
}

criterion_group!(benches, scalar_mul, coboundary, weak_hopf);
criterion_main!(benches);
