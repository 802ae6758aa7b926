use criterion::{criterion_group, criterion_main, Criterion};
use gfweight_bench::{five_three_strict, three_three, two_four};
use gfweight_core::arith::{rat, NumberField};
use gfweight_core::series::kth_root_one_plus;
use gfweight_core::theorems::strictness_diagnostic;
use gfweight_core::{gap_sequence, PointSpec, TruncatedSeries};
use std::hint::black_box;

fn gaps(c: &mut Criterion) {
    let curve = two_four();
    c.bench_function("gaps (2,4) axis 1", |b| {
        b.iter(|| gap_sequence(black_box(&curve), &PointSpec::GenericFixed { axis: 1 }, None).unwrap())
    });
    let curve = three_three(-2);
    c.bench_function("gaps (3,3) axis 3", |b| {
        b.iter(|| gap_sequence(black_box(&curve), &PointSpec::GenericFixed { axis: 3 }, None).unwrap())
    });
}

fn strictness(c: &mut Criterion) {
    let curve = three_three(2);
    c.bench_function("strictness (3,3) lambda 2", |b| {
        b.iter(|| strictness_diagnostic(black_box(&curve), &PointSpec::GenericFixed { axis: 3 }, None).unwrap())
    });
    let (curve, p) = five_three_strict();
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("strictness (5,3) lambda -1", |b| {
        b.iter(|| strictness_diagnostic(black_box(&curve), &p, None).unwrap())
    });
    group.finish();
}

fn roots(c: &mut Criterion) {
    let q = NumberField::rationals();
    let u = TruncatedSeries::from_rationals(&q, &[rat(0, 1), rat(1, 1), rat(-3, 2), rat(0, 1), rat(2, 7)], 64);
    c.bench_function("cube root of 1+u, 64 terms", |b| b.iter(|| kth_root_one_plus(black_box(&u), 3).unwrap()));
    let single = TruncatedSeries::from_rationals(&q, &[rat(0, 1), rat(0, 1), rat(0, 1), rat(-1, 1)], 64);
    c.bench_function("fifth root of 1-z^3, 64 terms", |b| {
        b.iter(|| kth_root_one_plus(black_box(&single), 5).unwrap())
    });
}

criterion_group!(benches, gaps, strictness, roots);
criterion_main!(benches);
