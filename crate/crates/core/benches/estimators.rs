//! Sequential versus rayon-parallel estimator throughput.

use std::hint::black_box;

use backhaul_core::montecarlo::{estimate_ergodic_rate, estimate_outage};
use backhaul_core::{table1_defaults, Execution, Strategy};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

const TRIALS: u64 = 200_000;

fn schedules() -> Vec<(&'static str, Execution)> {
    let mut v = vec![("sequential", Execution::Sequential)];
    if cfg!(feature = "parallel") {
        v.push(("parallel", Execution::Parallel { workers: 0 }));
    }
    v
}

fn outage(c: &mut Criterion) {
    let scenario = table1_defaults();
    let mut group = c.benchmark_group("outage");
    group.throughput(Throughput::Elements(TRIALS));
    group.sample_size(10);
    for label in ["mrc", "soft", "mode2"] {
        let strategy: Strategy = label.parse().unwrap();
        for (name, exec) in schedules() {
            group.bench_with_input(BenchmarkId::new(name, label), &strategy, |b, st| {
                b.iter(|| estimate_outage(&scenario, st, TRIALS, black_box(1), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn rate(c: &mut Criterion) {
    let scenario = table1_defaults();
    let strategy: Strategy = "hard".parse().unwrap();
    let mut group = c.benchmark_group("ergodic_rate");
    group.throughput(Throughput::Elements(TRIALS));
    group.sample_size(10);
    for (name, exec) in schedules() {
        group.bench_function(name, |b| {
            b.iter(|| estimate_ergodic_rate(&scenario, &strategy, TRIALS, black_box(1), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, outage, rate);
criterion_main!(benches);
