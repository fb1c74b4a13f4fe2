use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fuss_deform::density::{self, QuadConfig};
use fuss_deform::exact_seq::{self, A220910Method};
use fuss_deform::posdef;
use fuss_deform::rational::int;
use fuss_deform::series;
use fuss_deform::Params;

fn sequences(c: &mut Criterion) {
    let mut group = c.benchmark_group("a220910");
    for method in A220910Method::ALL {
        group.bench_with_input(
            BenchmarkId::from_parameter(method.name()),
            &method,
            |b, &m| b.iter(|| exact_seq::a220910_table(black_box(51), m).unwrap()),
        );
    }
    group.finish();
    c.bench_function("raney p=5/2 r=3 n=40", |b| {
        let p = int(5) / int(2);
        b.iter(|| exact_seq::raney(black_box(&p), &int(3), 40))
    });
}

fn series_kernels(c: &mut Criterion) {
    let params = Params::ratios((3, 2), (1, 5));
    let mut group = c.benchmark_group("cumulants");
    for order in [16usize, 32, 64] {
        let m = series::moment_series(&params, order).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(order), &m, |b, m| {
            b.iter(|| series::cumulants_from_moments(black_box(m)).unwrap())
        });
    }
    group.finish();
    c.bench_function("s closed order 32", |b| {
        b.iter(|| series::s_series_closed(black_box(&params), 32).unwrap())
    });
}

fn numeric(c: &mut Criterion) {
    let params = Params::ratios((3, 2), (1, 5));
    let cfg = QuadConfig::default();
    c.bench_function("moment quadrature n=10", |b| {
        b.iter(|| density::moment_quadrature(black_box(&params), 10, &cfg).unwrap())
    });
    c.bench_function("density sample", |b| {
        b.iter(|| density::f_pt(black_box(&params), 1.3, density::Route::Parametric).unwrap())
    });
    c.bench_function("g(p) p=1.5", |b| {
        b.iter(|| posdef::g_of_p(black_box(1.5)).unwrap())
    });
    c.bench_function("classify point m=8", |b| {
        let point = Params::ratios((7, 5), (3, 5));
        b.iter(|| posdef::classify_point(black_box(&point), 8).unwrap())
    });
}

criterion_group!(benches, sequences, series_kernels, numeric);
criterion_main!(benches);
