//! Compares the rayon-parallel and sequential code paths. The vertex
//! benches contrast both in one run; the signature-sampling bench follows
//! the crate feature, so run it once with default features and once with
//! `--no-default-features` to compare.

use criterion::{criterion_group, criterion_main, Criterion};
use stablegenus_core::knot::seifert_matrix_torus;
use stablegenus_core::polytope::{HPolytope, Halfspace};
use stablegenus_core::ratio::{q, qi, Q};
use stablegenus_core::signatures::sigma_samples;

fn cube_with_cuts(dim: usize) -> HPolytope {
    let mut hs = Vec::new();
    for i in 0..dim {
        let mut n = vec![qi(0); dim];
        n[i] = qi(1);
        hs.push(Halfspace::new(&n, qi(1)).unwrap());
    }
    // diagonal cuts make the candidate filtering non-trivial
    for i in 0..dim {
        for j in i + 1..dim {
            let mut n = vec![qi(0); dim];
            n[i] = qi(1);
            n[j] = qi(1);
            hs.push(Halfspace::new(&n, q(3, 2)).unwrap());
        }
    }
    HPolytope::new(dim, hs).unwrap()
}

fn bench_vertices(c: &mut Criterion) {
    let p = cube_with_cuts(5);
    let mut group = c.benchmark_group("vertex-enumeration");
    group.sample_size(10);
    group.bench_function("parallel-or-default", |b| {
        b.iter(|| std::hint::black_box(p.vertices().unwrap()))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| std::hint::black_box(p.vertices_seq().unwrap()))
    });
    group.finish();
}

fn bench_sigma_samples(c: &mut Criterion) {
    let v = seifert_matrix_torus(3, 7).unwrap();
    let zs: Vec<Q> = (1..200).map(|i| q(2 * i - 200, 101)).collect();
    c.bench_function("sigma-samples-feature-path", |b| {
        b.iter(|| std::hint::black_box(sigma_samples(&v, &zs)))
    });
}

criterion_group!(benches, bench_vertices, bench_sigma_samples);
criterion_main!(benches);
