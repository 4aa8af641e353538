use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nomsets::counterexamples::{wlpo_demo_with, SeqSpec};
use nomsets::suites::{decidable_specs, least_support_oracle};
use nomsets::support::brute_force_least_support_with;
use nomsets::{Atom, AtomSet, CondSet, Exec, NomValue, Prop};

fn universe(n: u32) -> AtomSet {
    (0..n).map(Atom).collect()
}

fn sample_value() -> NomValue {
    NomValue::pair(
        NomValue::inl(NomValue::Atom(Atom(0))),
        NomValue::pair(
            NomValue::CondSet(CondSet::abar(Atom(1), Prop::FALSE)),
            NomValue::Atom(Atom(2)),
        ),
    )
}

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_least_support");
    let v = sample_value();
    for n in [5u32, 6, 7] {
        let u = universe(n);
        for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, n), &u, |b, u| {
                b.iter(|| brute_force_least_support_with(exec, black_box(&v), u).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("least_support_vs_brute_force");
    group.sample_size(10);
    for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_function(label, |b| b.iter(|| least_support_oracle(exec, 7, 100)));
    }
    group.finish();
}

fn wlpo_rows(c: &mut Criterion) {
    let mut specs = decidable_specs(3, 200);
    specs.push(SeqSpec::registered("late-one").unwrap());
    let mut group = c.benchmark_group("wlpo_demo");
    for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_function(label, |b| {
            b.iter(|| wlpo_demo_with(exec, black_box(&specs), Atom(0), 2000))
        });
    }
    group.finish();
}

criterion_group!(benches, brute_force, oracle_suite, wlpo_rows);
criterion_main!(benches);
