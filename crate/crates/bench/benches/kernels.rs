use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use torusq_bench::pseudo_random_matrix;
use torusq_core::analysis::{analyze, DEFAULT_GROUP_CAP};
use torusq_core::exactmath::lattice::saturate;
use torusq_core::exactmath::normal_form::{hermite_normal_form, smith_normal_form};
use torusq_core::fixtures;
use torusq_core::symdiff::cyclic_descent_dim;
use torusq_core::torus::enumerate_group;

fn bench_normal_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal-forms");
    for n in [4usize, 6, 8] {
        let m = pseudo_random_matrix(42 + n as u64, n, 5);
        group.bench_with_input(BenchmarkId::new("snf", n), &m, |b, m| {
            b.iter(|| smith_normal_form(m))
        });
        group.bench_with_input(BenchmarkId::new("hnf", n), &m, |b, m| {
            b.iter(|| hermite_normal_form(m))
        });
        group.bench_with_input(BenchmarkId::new("saturate", n), &m, |b, m| {
            b.iter(|| saturate(m))
        });
    }
    group.finish();
}

fn bench_group_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    let beauville = fixtures::beauville_s3();
    group.bench_function("beauville-s3", |b| {
        b.iter(|| enumerate_group(&beauville, 100).unwrap())
    });
    group.finish();
}

fn bench_full_analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    for action in [fixtures::kummer(), fixtures::eisenstein(), fixtures::beauville_s3()] {
        group.bench_with_input(
            BenchmarkId::from_parameter(action.name.clone()),
            &action,
            |b, a| b.iter(|| analyze(a, DEFAULT_GROUP_CAP, None).unwrap()),
        );
    }
    group.finish();
}

fn bench_cyclic_descent(c: &mut Criterion) {
    let mut group = c.benchmark_group("cyclic-descent");
    group.bench_function("n4-w111-m8-r2", |b| {
        b.iter(|| cyclic_descent_dim(4, &[1, 1, 1], 8, 2).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_normal_forms,
    bench_group_enumeration,
    bench_full_analysis,
    bench_cyclic_descent
);
criterion_main!(benches);
