use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hallpi::par::{parallel_available, Execution};
use hallpi::verify::{cross_check_simple, exclusivity_scan, ExclusivityGrid, Grid, VerifyOptions};

fn modes() -> Vec<Execution> {
    let mut m = vec![Execution::Sequential];
    if parallel_available() {
        m.push(Execution::Parallel);
    }
    m
}

fn exclusivity(c: &mut Criterion) {
    let grid = ExclusivityGrid::default();
    let mut g = c.benchmark_group("exclusivity_scan");
    g.sample_size(10);
    for exec in modes() {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| exclusivity_scan(&grid, exec))
        });
    }
    g.finish();
}

fn cross_check(c: &mut Criterion) {
    let grid = Grid::default_grid();
    let mut g = c.benchmark_group("cross_check_default_grid");
    g.sample_size(10);
    for exec in modes() {
        let opts = VerifyOptions { exec, ..VerifyOptions::default() };
        g.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &opts, |b, opts| {
            b.iter(|| cross_check_simple(&grid, opts))
        });
    }
    g.finish();
}

criterion_group!(benches, exclusivity, cross_check);
criterion_main!(benches);
