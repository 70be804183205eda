use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use vacforce::geometry::{janus_reduced_integral, wrench_reduced_integral, JanusEngine, VoxelCloud};
use vacforce::quadrature::QuadratureSpec;

fn specs() -> [(&'static str, QuadratureSpec); 2] {
    let base = QuadratureSpec::default();
    [("parallel", base.clone()), ("sequential", base.sequential())]
}

fn janus_mc(c: &mut Criterion) {
    let mut g = c.benchmark_group("janus_mc_1e5");
    g.sample_size(10);
    for (name, spec) in specs() {
        let spec = spec.with_samples(100_000);
        g.bench_with_input(BenchmarkId::from_parameter(name), &spec, |b, s| {
            b.iter(|| janus_reduced_integral(black_box(2.0), JanusEngine::MonteCarlo, s).unwrap())
        });
    }
    g.finish();
}

fn voxel_sum(c: &mut Criterion) {
    let cloud = VoxelCloud::needle(10.0, 10.0, 0.01, 400);
    let mut g = c.benchmark_group("voxel_needle_400");
    for (name, spec) in specs() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &spec.parallel, |b, &p| {
            b.iter(|| cloud.force_sum(black_box(1.0), p))
        });
    }
    g.finish();
}

fn wrench(c: &mut Criterion) {
    let mut g = c.benchmark_group("wrench_polar_a100");
    g.sample_size(10);
    for (name, spec) in specs() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &spec, |b, s| {
            b.iter(|| wrench_reduced_integral(black_box(100.0), 100.0, s).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, janus_mc, voxel_sum, wrench);
criterion_main!(benches);
