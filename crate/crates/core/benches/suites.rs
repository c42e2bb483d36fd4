use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hplane_core::par::Exec;
use hplane_core::suites::{run_suite, Config, DEFAULT_SEED};

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for suite in ["climit", "plane-calculus"] {
        for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            let cfg = Config { seed: DEFAULT_SEED, exec };
            group.bench_function(format!("{suite}/{label}"), |b| b.iter(|| run_suite(black_box(suite), &cfg).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
