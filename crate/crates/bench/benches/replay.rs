use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use dynamis_bench::workloads;
use dynamis_core::replay::{run, RunOptions};

fn replay(c: &mut Criterion) {
    for w in workloads() {
        let mut group = c.benchmark_group(w.name);
        group.throughput(Throughput::Elements(w.stream.events.len() as u64));
        for &alg in w.algorithms {
            group.bench_with_input(BenchmarkId::from_parameter(alg), &w.stream, |b, s| {
                b.iter(|| run(alg, s, RunOptions::default()).expect("compatible workload"))
            });
        }
        group.finish();
    }
}

criterion_group!(
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = replay
);
criterion_main!(benches);
