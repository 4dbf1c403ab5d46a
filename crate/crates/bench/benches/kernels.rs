use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use spinsweep_bench::{probe_state, xy_ring};
use spinsweep_core::{
    dense_spectrum, evolve, lowest_eigenvalues, make_paramagnetic, split_driver_problem,
    EvolutionParams, ModelParams, Schedule, XyParams,
};

fn bench_matvec(c: &mut Criterion) {
    let h = xy_ring(12, 0.75, 1.0);
    let v = probe_state(12);
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    c.bench_function("apply_xy_n12", |b| {
        b.iter(|| h.apply_into(black_box(&v), &mut out))
    });
}

fn bench_lanczos(c: &mut Criterion) {
    let near_critical = xy_ring(10, 1.0, 0.9);
    c.bench_function("lowest2_xy_n10_near_critical", |b| {
        b.iter(|| lowest_eigenvalues(black_box(&near_critical), 2).unwrap())
    });
}

fn bench_dense(c: &mut Criterion) {
    let h = xy_ring(8, 0.5, 1.0);
    c.bench_function("dense_spectrum_n8", |b| {
        b.iter(|| dense_spectrum(black_box(&h)).unwrap())
    });
}

fn bench_evolution(c: &mut Criterion) {
    let (h0, hp) = split_driver_problem(&ModelParams::Xy(XyParams::new(10, 1.0, 0.0))).unwrap();
    let psi0 = make_paramagnetic(10).unwrap();
    let params = EvolutionParams::new(0.1)
        .with_num_steps(20)
        .with_sample_count(2);
    c.bench_function("evolve_20_steps_xy_n10", |b| {
        b.iter(|| evolve(&h0, &hp, Schedule::square(), black_box(&params), &psi0).unwrap())
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default()
        .sample_size(10)
        .measurement_time(Duration::from_secs(5))
        .warm_up_time(Duration::from_secs(1));
    targets = bench_matvec, bench_lanczos, bench_dense, bench_evolution
}
criterion_main!(kernels);
