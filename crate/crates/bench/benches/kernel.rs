use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fgl_cobord::fgl::{formal_inverse, verify_inverse_identity};
use fgl_cobord::lazard::LazardPresentation;
use fgl_cobord::wpbf::decompose;
use fgl_cobord::{CoeffRing, ProjRing};
use fgl_cobord_bench::fixture;

fn presentation(c: &mut Criterion) {
    let mut group = c.benchmark_group("presentation");
    for n in [4, 5, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| LazardPresentation::build(black_box(n))));
    }
    group.finish();
}

fn ring_arithmetic(c: &mut Criterion) {
    let f = fixture(6);
    let x = f.dense_element();
    c.bench_function("lazard/mul_dense", |b| b.iter(|| f.pres.mul(black_box(&x), black_box(&x))));
    let raw = f.pres.lift(&x);
    c.bench_function("lazard/reduce_lift", |b| b.iter(|| f.pres.reduce(black_box(&raw))));
}

fn series(c: &mut Criterion) {
    let f = fixture(6);
    c.bench_function("fgl/formal_inverse_6", |b| b.iter(|| formal_inverse(&f.table, black_box(6))));
    c.bench_function("fgl/inverse_identity_6", |b| b.iter(|| verify_inverse_identity(&f.table, black_box(6))));
    let r = ProjRing::new(Arc::clone(&f.pres), &[6, 6]).unwrap();
    c.bench_function("proj/chern_o11_6x6", |b| b.iter(|| r.chern_of_line_bundle(&f.table, black_box(&[1, 1]))));
}

fn products(c: &mut Criterion) {
    let f = fixture(6);
    c.bench_function("lbmodule/all_products_cold", |b| {
        b.iter(|| {
            let alg = f.algebra();
            for i in 0..=6 {
                for j in 0..=6 - i {
                    black_box(alg.eps(i, j).unwrap());
                }
            }
        })
    });
    let r = ProjRing::new(Arc::clone(&f.pres), &[6]).unwrap();
    let e = f.dense_class(&r);
    let alg = f.algebra();
    c.bench_function("wpbf/decompose_6", |b| b.iter(|| decompose(black_box(&e), &r, alg.psi(), &f.cache)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = presentation, ring_arithmetic, series, products
}
criterion_main!(benches);
