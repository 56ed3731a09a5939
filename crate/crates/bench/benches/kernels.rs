use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use necklace_core::algebras;
use necklace_core::graph::{canonical, classes_by_edges, GraphComplex};
use necklace_core::linalg::rank;
use necklace_core::random;
use necklace_core::suites;

fn necklace_ops(c: &mut Criterion) {
    let mut rng = random::rng(1);
    let space = random::letter_space(&mut rng, 1, 3);
    let h = random::word_element(&mut rng, &space, 5);
    let g = random::word_element(&mut rng, &space, 5);
    c.bench_function("necklace_bracket", |b| b.iter(|| black_box(&h).bracket(black_box(&g)).unwrap()));
    c.bench_function("necklace_cobracket", |b| b.iter(|| black_box(&h).cobracket()));
    let alg = algebras::tensor_product(&algebras::cyclic_group_algebra(2), &algebras::dual_numbers(3));
    c.bench_function("mu_tensor_dim4", |b| b.iter(|| black_box(&alg).mu_tensor().unwrap()));
}

fn master(c: &mut Criterion) {
    let alg = algebras::cyclic_group_algebra(2);
    c.bench_function("master_suite_z2_g3", |b| b.iter(|| suites::master_suite("z2", black_box(&alg), 3, 3).unwrap()));
}

fn graphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("graphs");
    group.sample_size(10);
    group.bench_function("classes_j4_colored", |b| b.iter(|| classes_by_edges(black_box(4), true)));
    let classes = classes_by_edges(4, true);
    group.bench_function("canonical_j4_colored", |b| b.iter(|| classes[4].iter().map(|g| canonical(g).sign).sum::<i64>()));
    let gc = GraphComplex::new(false, 5);
    let m = gc.diagonal_differential(0, 5, 1).unwrap();
    group.bench_function("diagonal_rank_plain_j5", |b| b.iter(|| rank(black_box(&m))));
    group.finish();
}

criterion_group!(benches, necklace_ops, master, graphs);
criterion_main!(benches);
