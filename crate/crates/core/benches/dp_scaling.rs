use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use indep12::dp;
use indep12::scaling::Shape;

fn decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    group.sample_size(20);
    for shape in [Shape::Path, Shape::RandomTree] {
        for n in [1_000, 10_000, 100_000] {
            let g = shape.instance(n, 7);
            group.throughput(Throughput::Elements(n as u64));
            group.bench_with_input(BenchmarkId::new(shape.to_string(), n), &g, |b, g| {
                b.iter(|| dp::decide(black_box(g)).unwrap())
            });
        }
    }
    group.finish();
}

// Paths always admit a set, so this includes witness reconstruction.
fn solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(20);
    for n in [1_000, 10_000, 100_000] {
        let g = Shape::Path.instance(n, 0);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::new("path", n), &g, |b, g| {
            b.iter(|| dp::solve(black_box(g)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, decide, solve);
criterion_main!(benches);
