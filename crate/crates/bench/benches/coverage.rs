use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use k3strata::coverage::{reachable_residues_via_sums, verify_remark_range};
use k3strata::{coverage_threshold, reachable_residues, reachable_sums};

fn residues(c: &mut Criterion) {
    let mut g = c.benchmark_group("residues");
    for n in [9u64, 25, 45] {
        let m = 2 * n * n;
        let b = ((n - 1) / 2) as u32;
        g.bench_with_input(BenchmarkId::new("dp", n), &m, |bench, &m| {
            bench.iter(|| reachable_residues(black_box(m), 16, b).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("via_sums", n), &m, |bench, &m| {
            bench.iter(|| reachable_residues_via_sums(black_box(m), 16, b).unwrap())
        });
    }
    g.finish();
}

fn sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("sums");
    for b in [4u32, 12, 22] {
        g.bench_with_input(BenchmarkId::from_parameter(b), &b, |bench, &b| {
            bench.iter(|| reachable_sums(16, black_box(b)).unwrap())
        });
    }
    g.finish();
}

fn threshold(c: &mut Criterion) {
    c.bench_function("threshold_9_26_4", |b| {
        b.iter(|| coverage_threshold(black_box(9), 26, 4).unwrap())
    });
}

fn remark(c: &mut Criterion) {
    let mut g = c.benchmark_group("remark");
    g.sample_size(10);
    g.bench_function("9..=45", |b| {
        b.iter(|| verify_remark_range(9..=45).unwrap())
    });
    g.finish();
}

criterion_group!(benches, residues, sums, threshold, remark);
criterion_main!(benches);
