use criterion::{criterion_group, criterion_main, Criterion};
use primset::lab::{run_sweep_with, Experiment, RunMode, SweepSpec};

fn bench_modes(c: &mut Criterion, name: &str, spec: SweepSpec) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| run_sweep_with(&spec, RunMode::Sequential, None).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| run_sweep_with(&spec, RunMode::Parallel, None).unwrap())
    });
    group.finish();
}

fn sweep_benches(c: &mut Criterion) {
    bench_modes(
        c,
        "thm14_binary_len12",
        SweepSpec::exhaustive(Experiment::Thm14, 2, 12),
    );
    bench_modes(
        c,
        "thm9_binary_len5",
        SweepSpec::exhaustive(Experiment::Thm9, 2, 5),
    );
    bench_modes(
        c,
        "prop17_ternary_len7",
        SweepSpec::exhaustive(Experiment::Prop17, 3, 7),
    );
}

criterion_group!(benches, sweep_benches);
criterion_main!(benches);
