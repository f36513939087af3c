use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gammaseq_bench::POINTS;
use gammaseq_core::analysis::roots::{find_root_a, find_root_c};
use gammaseq_core::gfun::{self, eval_point};
use gammaseq_core::kernel::{self, Route};
use gammaseq_core::sequences;
use gammaseq_core::EvalConfig;

fn trigamma_routes(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let mut group = c.benchmark_group("trigamma");
    for x in POINTS {
        for route in [Route::Asymptotic, Route::Series] {
            group.bench_with_input(BenchmarkId::new(format!("{route:?}"), x), &x, |b, &x| {
                b.iter(|| kernel::trigamma_via(black_box(x), &cfg, route))
            });
        }
    }
    group.finish();
}

fn h_routes(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let mut group = c.benchmark_group("h");
    for x in POINTS {
        group.bench_with_input(BenchmarkId::new("series", x), &x, |b, &x| {
            b.iter(|| gfun::h_series(black_box(x), &cfg))
        });
        group.bench_with_input(BenchmarkId::new("kernel", x), &x, |b, &x| {
            b.iter(|| gfun::h_kernel(black_box(x), &cfg))
        });
    }
    group.finish();
}

fn points(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let mut group = c.benchmark_group("eval_point");
    for x in POINTS {
        group.bench_with_input(BenchmarkId::from_parameter(x), &x, |b, &x| {
            b.iter(|| eval_point(black_box(x), &cfg))
        });
    }
    group.finish();
}

fn sequences_and_roots(c: &mut Criterion) {
    c.bench_function("sigma_table 5000", |b| {
        b.iter(|| sequences::sigma_table(black_box(5000)))
    });
    c.bench_function("harmonic_rows 10000", |b| {
        b.iter(|| sequences::harmonic_rows(black_box(10_000)))
    });
    c.bench_function("n_a 1e6", |b| b.iter(|| sequences::n_a(black_box(1e6))));
    c.bench_function("root a", |b| b.iter(|| find_root_a(black_box(1e-7))));
    c.bench_function("root c", |b| b.iter(|| find_root_c(black_box(1e-7))));
}

criterion_group!(
    benches,
    trigamma_routes,
    h_routes,
    points,
    sequences_and_roots
);
criterion_main!(benches);
