use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use vvlab_bench::{modal_field, vortex_magnitude, vortex_state};
use vvlab_core::diagnostics::{concentration_curve, mollifier_split, DiskMask};
use vvlab_core::solver::{StepOptions, Stepper};

const SIZES: [usize; 3] = [64, 128, 256];

fn transforms(c: &mut Criterion) {
    let mut group = c.benchmark_group("fft2_round_trip");
    for n in SIZES {
        let f = modal_field(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| black_box(f.to_physical().to_spectral()))
        });
    }
    group.finish();
}

fn stepping(c: &mut Criterion) {
    let mut group = c.benchmark_group("rk4_step");
    group.sample_size(20);
    for n in SIZES {
        let state = vortex_state(n, 1e-3);
        let mut stepper = Stepper::new(state.grid().clone(), 1e-3, StepOptions::default());
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| black_box(stepper.step(&state, 1e-3).unwrap()))
        });
    }
    group.finish();
}

fn diagnostics(c: &mut Criterion) {
    let mut group = c.benchmark_group("concentration");
    group.sample_size(20);
    for n in SIZES {
        let f = vortex_magnitude(n);
        let masks: Vec<DiskMask> = [0.1, 0.2, 0.4, 0.8]
            .iter()
            .map(|&r| DiskMask::new(f.grid(), r).unwrap())
            .collect();
        group.bench_with_input(BenchmarkId::new("four_radii", n), &f, |b, f| {
            b.iter(|| black_box(concentration_curve(f, &masks)))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("mollifier_split");
    group.sample_size(20);
    for n in [128, 256] {
        let state = vortex_state(n, 1e-2);
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| black_box(mollifier_split(state.omega(), 0.5, 1e-2).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, transforms, stepping, diagnostics);
criterion_main!(benches);
