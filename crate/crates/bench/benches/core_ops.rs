use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use rigidbar_core::algebra::RandomSource;
use rigidbar_core::characterisation::combinatorial_rigid;
use rigidbar_core::generators::{random_looped_graph, random_min_loop_graph};
use rigidbar_core::graph::LoopedGraph;
use rigidbar_core::rigidity::{find_circuit, generic_rank};
use rigidbar_core::sparsity::{pebble_game, SparsityParams};

fn fixed_instance(seed: u64, max_vertices: usize, d: usize) -> LoopedGraph {
    let mut rs = RandomSource::from_seed(seed);
    random_min_loop_graph(&mut rs, max_vertices, d, 1)
}

fn bench_pebble_game(c: &mut Criterion) {
    let params = SparsityParams::new(2).expect("k >= 1");
    let mut rs = RandomSource::from_seed(17);
    let g = random_looped_graph(&mut rs, 60, 2);
    c.bench_function("pebble_game_60v_k2", |b| {
        b.iter(|| black_box(pebble_game(black_box(&g), &params)))
    });
}

fn bench_generic_rank(c: &mut Criterion) {
    let g = fixed_instance(23, 30, 3);
    c.bench_function("generic_rank_30v_d3", |b| {
        b.iter(|| {
            let mut rs = RandomSource::from_seed(1);
            black_box(generic_rank(black_box(&g), 3, &mut rs))
        })
    });
}

fn bench_combinatorial_rigid(c: &mut Criterion) {
    let g = fixed_instance(29, 30, 3);
    c.bench_function("combinatorial_rigid_30v_d3", |b| {
        b.iter(|| black_box(combinatorial_rigid(black_box(&g), 3).expect("d >= 2")))
    });
}

fn bench_find_circuit(c: &mut Criterion) {
    let mut rs = RandomSource::from_seed(31);
    // Three loops per vertex overfill every vertex block at d = 2, so the
    // instance is dependent and the extraction always runs in full.
    let g = random_looped_graph(&mut rs, 10, 0).add_uniform_loops(3);
    c.bench_function("find_circuit_10v_d2", |b| {
        b.iter(|| {
            let mut rs = RandomSource::from_seed(2);
            black_box(find_circuit(black_box(&g), 2, &mut rs))
        })
    });
}

criterion_group!(
    benches,
    bench_pebble_game,
    bench_generic_rank,
    bench_combinatorial_rigid,
    bench_find_circuit
);
criterion_main!(benches);
