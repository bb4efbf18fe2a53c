use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jacobi_analogues::series::{elementary, Elementary};
use jacobi_analogues::verify::{run_suite, SuiteConfig};
use jacobi_analogues::{phi_oracle, AnalogueSet, ModulusParams};

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for order in [16, 32, 64] {
        let params = ModulusParams::from_reciprocal(6, 0.8).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &order| {
            b.iter(|| AnalogueSet::build(black_box(&params), order).unwrap())
        });
    }
    group.finish();
}

fn revert(c: &mut Criterion) {
    let mut group = c.benchmark_group("revert_sin");
    for order in [16, 32, 64] {
        let sin = elementary(Elementary::Sin, order);
        group.bench_with_input(BenchmarkId::from_parameter(order), &sin, |b, s| {
            b.iter(|| black_box(s).revert().unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let params = ModulusParams::from_reciprocal(4, 0.8).unwrap();
    c.bench_function("phi_oracle", |b| {
        b.iter(|| phi_oracle(&params, black_box(0.2)).unwrap())
    });
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_suite");
    group.sample_size(10);
    let single = SuiteConfig {
        a_values: vec![ModulusParams::from_reciprocal(4, 0.6).unwrap().a().clone()],
        kappas: vec![0.6],
        ..SuiteConfig::default()
    };
    group.bench_function("one_point", |b| b.iter(|| run_suite(black_box(&single))));
    group.bench_function("default_grid", |b| {
        b.iter(|| run_suite(black_box(&SuiteConfig::default())))
    });
    group.finish();
}

criterion_group!(benches, build, revert, oracle, suite);
criterion_main!(benches);
