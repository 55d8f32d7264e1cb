use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use khs::assemble::table_rows;
use khs::numtheory::scan_irregular;
use khs::par::Execution;
use khs::params::Params;

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel { jobs: None }),
    ]
}

fn irregular(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_irregular");
    group.sample_size(10);
    for max_p in [1_000u64, 3_000] {
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, max_p), &max_p, |b, &m| {
                b.iter(|| scan_irregular(black_box(m), exec))
            });
        }
    }
    group.finish();
}

fn table(c: &mut Criterion) {
    let params = Params::default();
    let mut group = c.benchmark_group("table_rows");
    for (name, exec) in modes() {
        group.bench_function(name, |b| b.iter(|| table_rows(black_box(22), &params, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, irregular, table);
criterion_main!(benches);
