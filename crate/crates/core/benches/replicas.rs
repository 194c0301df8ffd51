use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use greedy_ldp::ldp::rate_f;
use greedy_ldp::par;
use greedy_ldp::replicas;
use greedy_ldp::ModelParams;

fn chain_replicas(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain_stop_times");
    group.sample_size(10);
    for n in [1_000usize, 10_000] {
        let params = ModelParams::finite(n, 1.0).unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", n), &params, |b, p| {
            b.iter(|| replicas::chain_stop_times_sequential(p, black_box(7), 256).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", n), &params, |b, p| {
            b.iter(|| replicas::chain_stop_times(p, black_box(7), 256).unwrap())
        });
    }
    group.finish();
}

fn graph_replicas(c: &mut Criterion) {
    let mut group = c.benchmark_group("graph_stop_times");
    group.sample_size(10);
    let params = ModelParams::finite(2_000, 2.0).unwrap();
    group.bench_function("sequential", |b| {
        b.iter(|| replicas::graph_stop_times_sequential(&params, black_box(7), 64).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| replicas::graph_stop_times(&params, black_box(7), 64).unwrap())
    });
    group.finish();
}

fn rate_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("rate_f_sweep");
    group.sample_size(10);
    let alphas: Vec<f64> = (0..81).map(|i| -2.0 + 4.0 * i as f64 / 80.0).collect();
    group.bench_function("sequential", |b| {
        b.iter(|| par::map_indices_sequential(alphas.len(), |i| rate_f(1.0, alphas[i]).unwrap()))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| par::map_slice(&alphas, |&a| rate_f(1.0, a).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, chain_replicas, graph_replicas, rate_sweep);
criterion_main!(benches);
