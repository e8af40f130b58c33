//! Benchmarks for the hot paths of the moment engines: hyperplane slicing,
//! the exact even-moment expansion, and one section-integrand evaluation.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use simplex_moments::catalog;
use simplex_moments::moments::even_moment;
use simplex_moments::polytope::Hyperplane;
use simplex_moments::rat::{int, rat};
use simplex_moments::section::integrand;

fn bench_slice(c: &mut Criterion) {
    let cube = catalog::find("C3").unwrap().polytope;
    let plane = Hyperplane::new(vec![rat(2, 3), rat(3, 4), rat(4, 5)]);
    c.bench_function("slice_cube_generic_plane", |b| {
        b.iter(|| black_box(&cube).slice(black_box(&plane)))
    });
}

fn bench_even_moment(c: &mut Criterion) {
    let tet = catalog::find("T3").unwrap().polytope;
    c.bench_function("even_moment_T3_k2", |b| {
        b.iter(|| even_moment(black_box(&tet), 2).unwrap())
    });
    let square = catalog::find("C2").unwrap().polytope;
    c.bench_function("even_moment_C2_k4", |b| {
        b.iter(|| even_moment(black_box(&square), 4).unwrap())
    });
}

fn bench_integrand(c: &mut Criterion) {
    let entry = catalog::find("T3").unwrap();
    let configs = entry.configurations().unwrap();
    let config = configs
        .iter()
        .find(|cfg| !cfg.is_empty_separation())
        .unwrap();
    let eta = vec![int(2), int(2), int(2)];
    c.bench_function("section_integrand_T3_k1", |b| {
        b.iter(|| integrand(black_box(&entry.polytope), config, 1, black_box(&eta)).unwrap())
    });
}

criterion_group!(benches, bench_slice, bench_even_moment, bench_integrand);
criterion_main!(benches);
