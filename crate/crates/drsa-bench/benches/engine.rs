use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use drsa_bench::{synthetic_series, synthetic_table};
use drsa_core::dominance::quality_gamma;
use drsa_core::domlem::{induce, InduceParams};
use drsa_core::pipeline::rolling_average;
use drsa_core::{classify, covering_rules};

fn bench_quality_gamma(c: &mut Criterion) {
    let mut group = c.benchmark_group("quality_gamma");
    for n in [200usize, 1000, 2000] {
        let table = synthetic_table(n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &table, |b, table| {
            b.iter(|| quality_gamma(black_box(table)).unwrap());
        });
    }
    group.finish();
}

fn bench_induce(c: &mut Criterion) {
    let mut group = c.benchmark_group("induce");
    group.sample_size(10);
    for n in [100usize, 200, 400] {
        let table = synthetic_table(n, 11);
        group.bench_with_input(BenchmarkId::from_parameter(n), &table, |b, table| {
            b.iter(|| induce(black_box(table), InduceParams::new(25.0, 5)).unwrap());
        });
    }
    group.finish();
}

fn bench_classify(c: &mut Criterion) {
    let table = synthetic_table(200, 13);
    let ruleset = induce(&table, InduceParams::new(25.0, 5)).unwrap();
    let values: Vec<Vec<f64>> = table
        .observations()
        .iter()
        .map(|o| o.values.clone())
        .collect();
    c.bench_function("classify_200_observations", |b| {
        b.iter(|| {
            for v in &values {
                black_box(classify(black_box(&ruleset), v).unwrap());
            }
        });
    });
    c.bench_function("covering_rules_single", |b| {
        b.iter(|| covering_rules(black_box(&ruleset), black_box(&values[0])).unwrap());
    });
}

fn bench_rolling(c: &mut Criterion) {
    let series = synthetic_series(100, 120, 17);
    c.bench_function("rolling_average_100x120", |b| {
        b.iter(|| rolling_average(black_box(&series), 7).unwrap());
    });
}

criterion_group!(
    benches,
    bench_quality_gamma,
    bench_induce,
    bench_classify,
    bench_rolling
);
criterion_main!(benches);
