use std::hint::black_box;

use cms_bench::{dichotomous, grid, path, single_premise};
use cms_core::{solve, solve_brute, solve_mincut, solve_treewidth_heuristic, SolveConfig};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn mincut(c: &mut Criterion) {
    let mut group = c.benchmark_group("mincut");
    for m in [250, 500, 1000, 2000] {
        let p = dichotomous(m, m, 8.0, 7);
        group.bench_with_input(BenchmarkId::from_parameter(m), &p, |b, p| {
            b.iter(|| solve_mincut(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn treewidth(c: &mut Criterion) {
    let mut group = c.benchmark_group("treewidth_grid");
    for rho in [3, 4, 5, 6] {
        let p = grid(rho);
        group.bench_with_input(BenchmarkId::from_parameter(rho), &p, |b, p| {
            b.iter(|| solve_treewidth_heuristic(black_box(p)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("treewidth_path");
    for m in [250, 500, 1000, 2000] {
        let p = path(m, 10, 4, 11);
        group.bench_with_input(BenchmarkId::from_parameter(m), &p, |b, p| {
            b.iter(|| solve_treewidth_heuristic(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn brute(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute");
    for m in [6, 8, 10] {
        let p = single_premise(m, 6, 3, 5);
        group.bench_with_input(BenchmarkId::from_parameter(m), &p, |b, p| {
            b.iter(|| solve_brute(black_box(p), u64::MAX).unwrap())
        });
    }
    group.finish();
}

fn dispatch(c: &mut Criterion) {
    let p = single_premise(2000, 2, 3, 3);
    c.bench_function("dispatch_2000", |b| {
        b.iter(|| solve(black_box(&p), &SolveConfig::default()).unwrap())
    });
}

criterion_group!(benches, mincut, treewidth, brute, dispatch);
criterion_main!(benches);
