//! Throughput of the cycle machinery: the pruned enumerator at both
//! uniformities, the exhaustive oracle, and the tree-driven search.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hypersat_bench::{dense_two_graph, sparse_two_graph, thinned_triple_system, three_partite, triple_system};
use hypersat_core::cycles::{count_cycles_oracle, enumerate_linear_cycles};
use hypersat_core::generators::gnp;
use hypersat_core::lemmas::bfs_find_cycles;
use hypersat_core::Seed;

fn bench_two_graph_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_2graph");
    let sparse = sparse_two_graph();
    let dense = dense_two_graph();
    group.bench_function("gnp(60,0.15) k=2", |b| {
        b.iter(|| enumerate_linear_cycles(black_box(&sparse), 2).count())
    });
    group.bench_function("gnp(60,0.15) k=3", |b| {
        b.iter(|| enumerate_linear_cycles(black_box(&sparse), 3).count())
    });
    group.bench_function("gnp(40,0.4) k=2", |b| {
        b.iter(|| enumerate_linear_cycles(black_box(&dense), 2).count())
    });
    group.finish();
}

fn bench_triple_system_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_triples");
    for n in [25usize, 40] {
        let g = triple_system(n);
        group.bench_with_input(BenchmarkId::new("steiner k=2", n), &g, |b, g| {
            b.iter(|| enumerate_linear_cycles(black_box(g), 2).count())
        });
    }
    let thinned = thinned_triple_system(40, 0.5);
    group.bench_function("steiner(40) thinned k=2", |b| {
        b.iter(|| enumerate_linear_cycles(black_box(&thinned), 2).count())
    });
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let g = gnp(9, 0.6, Seed::new(7)).expect("valid parameters");
    c.bench_function("oracle n=9 k=2", |b| {
        b.iter(|| count_cycles_oracle(black_box(&g), 2).unwrap().count())
    });
}

fn bench_tree_search(c: &mut Criterion) {
    let two = sparse_two_graph();
    let three = three_partite();
    let mut group = c.benchmark_group("bfs_find_cycles");
    group.bench_function("2-graph root sweep", |b| {
        b.iter(|| {
            let mut total = 0usize;
            for x in 0..10u32 {
                total += bfs_find_cycles(black_box(&two), x, 2, Seed::new(1))
                    .unwrap()
                    .found
                    .len();
            }
            total
        })
    });
    group.bench_function("3-partite root", |b| {
        b.iter(|| {
            bfs_find_cycles(black_box(&three), 0, 2, Seed::new(1))
                .unwrap()
                .found
                .len()
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_two_graph_enumeration,
    bench_triple_system_enumeration,
    bench_oracle,
    bench_tree_search
);
criterion_main!(benches);
