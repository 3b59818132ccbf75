use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use foliar_core::arborescent::generate_diagram;
use foliar_core::batch::{check_all, check_all_seq, crosscheck_all, crosscheck_all_seq};
use foliar_core::diagram::LinkDiagram;
use foliar_core::generate::{random_twist_gluing, tree_from_parents, tree_shapes, weight_assignments};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gluings(n: usize) -> Vec<LinkDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..n).map(|i| random_twist_gluing(&mut rng, 3 + i % 6, 5)).collect()
}

fn trees() -> Vec<LinkDiagram> {
    let mut out = Vec::new();
    for parents in tree_shapes(5) {
        for w in weight_assignments(&[-3, 2, 3, 4], 5) {
            out.push(generate_diagram(&tree_from_parents(&parents, &w)).unwrap());
        }
    }
    out
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_main");
    group.sample_size(20);
    for (name, ds) in [("gluings", gluings(512)), ("trees", trees())] {
        group.bench_with_input(BenchmarkId::new("parallel", name), &ds, |b, ds| b.iter(|| check_all(black_box(ds))));
        group.bench_with_input(BenchmarkId::new("sequential", name), &ds, |b, ds| b.iter(|| check_all_seq(black_box(ds))));
    }
    group.finish();

    let ds = gluings(512);
    let mut group = c.benchmark_group("crosscheck");
    group.sample_size(20);
    group.bench_function("parallel", |b| b.iter(|| crosscheck_all(black_box(&ds))));
    group.bench_function("sequential", |b| b.iter(|| crosscheck_all_seq(black_box(&ds))));
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
