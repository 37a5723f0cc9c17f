use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hankel_core::bounds::envelope_max;
use hankel_core::classes::{hankel_qn, omega_polynomial, oracle_coeffs};
use hankel_core::{
    maximize_h2, ClassSpec, Complex64, SchwarzTriple, SearchConfig, TruncatedSeries,
};

fn sample_series(order: usize) -> TruncatedSeries {
    let coeffs = (0..order)
        .map(|k| Complex64::new(1.0 / (k + 1) as f64, 0.5 / (k + 2) as f64))
        .collect();
    TruncatedSeries::new(coeffs).expect("nonempty")
}

fn series_ops(c: &mut Criterion) {
    let a = sample_series(16);
    let b = sample_series(16);
    let mut inner = sample_series(16).coeffs().to_vec();
    inner[0] = Complex64::default();
    let inner = TruncatedSeries::new(inner).expect("nonempty");
    c.bench_function("series/mul_16", |bench| {
        bench.iter(|| black_box(&a).mul(black_box(&b)))
    });
    c.bench_function("series/div_16", |bench| {
        bench.iter(|| black_box(&a).div(black_box(&b)))
    });
    c.bench_function("series/compose_16", |bench| {
        bench.iter(|| TruncatedSeries::compose(black_box(&a), black_box(&inner)))
    });
    c.bench_function("series/sqrt1p_16", |bench| {
        bench.iter(|| TruncatedSeries::sqrt1p(black_box(&inner)))
    });
}

fn functionals(c: &mut Criterion) {
    let t = SchwarzTriple::new(
        Complex64::new(0.3, 0.2),
        Complex64::new(-0.1, 0.4),
        Complex64::new(0.2, -0.1),
    );
    let spec = ClassSpec::Ozaki(0.25);
    c.bench_function("classes/h2_closed_form", |bench| {
        bench.iter(|| black_box(&spec).h2(black_box(&t)))
    });
    let omega = omega_polynomial(&t, 8);
    c.bench_function("classes/oracle_coeffs_a4", |bench| {
        bench.iter(|| oracle_coeffs(black_box(&spec), black_box(&omega), 4))
    });
    let coeffs: Vec<Complex64> = (1..=12).map(|n| Complex64::new(n as f64, 0.0)).collect();
    c.bench_function("classes/hankel_q4", |bench| {
        bench.iter(|| hankel_qn(black_box(&coeffs), 4, 2))
    });
}

fn envelopes(c: &mut Criterion) {
    let spec = ClassSpec::GClass(0.5);
    c.bench_function("bounds/envelope_max", |bench| {
        bench.iter(|| envelope_max(black_box(&spec)))
    });
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimizer");
    group.sample_size(10);
    let spec = ClassSpec::Ozaki(0.37);
    let small = SearchConfig {
        grid_per_axis: 5,
        starts_kept: 5,
        ..SearchConfig::default()
    };
    group.bench_function("maximize_h2_small", |bench| {
        bench.iter(|| maximize_h2(black_box(&spec), &small))
    });
    let default = SearchConfig::default();
    group.bench_function("maximize_h2_default", |bench| {
        bench.iter(|| maximize_h2(black_box(&spec), &default))
    });
    group.finish();
}

criterion_group!(benches, series_ops, functionals, envelopes, search);
criterion_main!(benches);
