//! Benchmarks for the dominant costs: explicit group enumeration, exact
//! minimal polynomials, Kronecker products and building the coset-model
//! digraphs.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;
use symdg_core::construct::{build_gamma, build_sigma};
use symdg_core::exact::minimal_polynomial;
use symdg_core::perm::PermutationGroup;

fn group_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("group-enumeration");
    for s in [2usize, 3, 4] {
        let instance = build_gamma(s).expect("construction succeeds");
        let generators: Vec<_> = instance.witness_group.generators().to_vec();
        let degree = generators[0].degree();
        let order = instance.witness_group.order().expect("order fits");
        group.bench_function(format!("witness-group-rank-{s}-order-{order}"), |b| {
            b.iter_batched(
                || PermutationGroup::new(degree, generators.clone()).expect("valid group"),
                |fresh| black_box(fresh.order().expect("order fits")),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn minimal_polynomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimal-polynomial");
    for s in [2usize, 3] {
        let instance = build_gamma(s).expect("construction succeeds");
        let matrix = instance.digraph.adjacency_matrix();
        let n = matrix.rows();
        group.bench_function(format!("adjacency-{n}x{n}"), |b| {
            b.iter(|| black_box(minimal_polynomial(black_box(&matrix)).expect("minpoly")))
        });
    }
    group.finish();
}

fn kronecker_products(c: &mut Criterion) {
    let instance = build_gamma(2).expect("construction succeeds");
    let matrix = instance.digraph.adjacency_matrix();
    c.bench_function("kronecker-16x16-squared", |b| {
        b.iter(|| black_box(black_box(&matrix).kronecker(&matrix)))
    });
}

fn coset_models(c: &mut Criterion) {
    let mut group = c.benchmark_group("coset-model");
    group.sample_size(10);
    group.bench_function("gamma-rank-3", |b| {
        b.iter(|| black_box(build_gamma(black_box(3)).expect("construction succeeds")))
    });
    group.bench_function("sigma-441", |b| {
        b.iter(|| black_box(build_sigma().expect("construction succeeds")))
    });
    group.finish();
}

criterion_group!(
    benches,
    group_enumeration,
    minimal_polynomials,
    kronecker_products,
    coset_models
);
criterion_main!(benches);
