use criterion::{criterion_group, criterion_main, Criterion};
use esq_core::bounds::{lemma1_bound, lemma3_bound, Options};
use esq_core::entropy::von_neumann_entropy;
use esq_core::qstate::partial_trace;
use esq_core::{states, sweep, Family, FamilySpec, Grid, LogBase, Method, SystemLayout};
use std::hint::black_box;

fn primitives(c: &mut Criterion) {
    let layout = SystemLayout::qubits(6).unwrap();
    let rho = states::random_mixed(&layout, 8, 1).unwrap();
    c.bench_function("partial_trace 6q keep 3", |b| {
        b.iter(|| partial_trace(black_box(&rho), &layout, &[0, 2, 4]).unwrap())
    });
    c.bench_function("entropy 64x64", |b| {
        b.iter(|| von_neumann_entropy(black_box(&rho), LogBase::Two).unwrap())
    });
}

fn bounds(c: &mut Criterion) {
    let opts = Options::default();
    let l3 = SystemLayout::qubits(3).unwrap();
    let werner = states::generalized_werner(0.1).unwrap();
    c.bench_function("lemma1 werner", |b| {
        b.iter(|| lemma1_bound(black_box(&werner), &l3, &opts).unwrap())
    });
    let l4 = SystemLayout::qubits(4).unwrap();
    let mix = states::ghz_w_mixture(0.5).unwrap();
    c.bench_function("lemma3 ghz-w", |b| {
        b.iter(|| lemma3_bound(black_box(&mix), &l4, &opts).unwrap())
    });
    let l8 = SystemLayout::qubits(8).unwrap();
    let big = states::random_mixed(&l8, 4, 2).unwrap();
    c.bench_function("lemma3 8 qubits", |b| {
        b.iter(|| lemma3_bound(black_box(&big), &l8, &opts).unwrap())
    });
}

fn scans(c: &mut Criterion) {
    let opts = Options::default();
    let spec = FamilySpec::new(Family::GhzWMixture);
    let grid: Grid = "0:1:0.01".parse().unwrap();
    let mut group = c.benchmark_group("scan");
    group.sample_size(20);
    group.bench_function("sweep ghz-w 101 points", |b| {
        b.iter(|| sweep::sweep(&spec, &[Method::Lemma3], &grid, &opts).unwrap())
    });
    group.bench_function("threshold ghz-w", |b| {
        b.iter(|| sweep::threshold(&spec, Method::Lemma3, 0.05, 0.2, 1e-6, &opts).unwrap())
    });
    group.finish();
}

criterion_group!(benches, primitives, bounds, scans);
criterion_main!(benches);
