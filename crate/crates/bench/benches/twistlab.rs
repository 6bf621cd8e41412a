use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use twistlab::{euclid_reduce, farey_quotient, procedure_run, relation_search, ProcedureConfig};
use twistlab_bench::{collection, fibonacci_triple, uniform};

fn euclid(c: &mut Criterion) {
    let long = fibonacci_triple(40);
    c.bench_function("euclid_reduce fibonacci 40", |b| {
        b.iter(|| euclid_reduce(black_box(&long)).unwrap())
    });
    let eg4 = uniform(&[(1, 0), (7, 3), (1, 4)], 1);
    c.bench_function("euclid_reduce small", |b| {
        b.iter(|| euclid_reduce(black_box(&eg4)).unwrap())
    });
}

fn relations(c: &mut Criterion) {
    let free = uniform(&[(1, 0), (0, 1)], 2);
    c.bench_function("relation_search free pair depth 8", |b| {
        b.iter(|| relation_search(black_box(&free), 8))
    });
}

fn farey(c: &mut Criterion) {
    c.bench_function("farey_quotient 30", |b| {
        b.iter(|| farey_quotient(black_box(30)).unwrap())
    });
}

fn procedure(c: &mut Criterion) {
    let eg7 = collection(&[(1, 0), (1, 3), (1, 10), (3, 17)], 1);
    c.bench_function("procedure eg7", |b| {
        b.iter(|| procedure_run(black_box(&eg7), ProcedureConfig::default()))
    });
    let eg8 = collection(&[(1, 0), (0, 1), (1, 1), (2, 1), (3, 1)], 4);
    let config = ProcedureConfig {
        max_steps: 6,
        ..ProcedureConfig::default()
    };
    c.bench_function("procedure eg8 six steps", |b| {
        b.iter(|| procedure_run(black_box(&eg8), config))
    });
}

criterion_group!(benches, euclid, relations, farey, procedure);
criterion_main!(benches);
