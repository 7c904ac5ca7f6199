use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use incgen_core::multigraph::compute_p2;
use incgen_core::switching::{b_d_1, b_l_1, Workspace};
use incgen_core::{generate_pairing, DegreeSequence, Multigraph, Vertex};

/// A 2-path `v1 v2 v3` of single edges through a loopless centre.
fn some_path(g: &Multigraph) -> [Vertex; 3] {
    for v in 0..g.n() as Vertex {
        if g.loop_count(v) > 0 {
            continue;
        }
        let nb: Vec<Vertex> = g.simple_neighbors(v).collect();
        if nb.len() >= 2 {
            return [nb[0], v, nb[1]];
        }
    }
    panic!("no simple 2-path");
}

fn backward_counts(c: &mut Criterion) {
    let ds = DegreeSequence::regular(100_000, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = Multigraph::from_pairing(generate_pairing(&ds, &mut rng).unwrap());
    let path = some_path(&g);
    let mut ws = Workspace::new(g.n());
    c.bench_function("b_l_1/6-regular", |b| {
        b.iter(|| b_l_1(black_box(&g), &path).unwrap())
    });
    c.bench_function("b_d_1/6-regular", |b| {
        b.iter(|| b_d_1(black_box(&g), &path, &mut ws).unwrap())
    });
    c.bench_function("compute_p2/6-regular", |b| {
        b.iter(|| compute_p2(black_box(&g)))
    });
}

criterion_group!(benches, backward_counts);
criterion_main!(benches);
