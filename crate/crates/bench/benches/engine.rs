use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use harmonica::harmonic::{harmonic_space, harmonic_space_via_laplacian, LaplacianKind};
use harmonica::hermitian::{hodge_star, primitive_decompose};
use harmonica::structure::check_integrability_relations;
use harmonica::theorems::verify_bc21_gap;
use harmonica::{catalog, parse_form};

fn harmonic_spaces(c: &mut Criterion) {
    let spec = catalog("iwasawa_ak").unwrap();
    c.bench_function("bc (2,1) conditions", |b| {
        b.iter(|| harmonic_space(&spec, black_box(LaplacianKind::BottChern), 2, 1).unwrap())
    });
    c.bench_function("bc (2,1) laplacian nullspace", |b| {
        b.iter(|| {
            harmonic_space_via_laplacian(&spec, black_box(LaplacianKind::BottChern), 2, 1).unwrap()
        })
    });
    c.bench_function("all d-harmonic bidegrees", |b| {
        b.iter(|| {
            for p in 0..=3 {
                for q in 0..=3 {
                    harmonic_space(&spec, LaplacianKind::D, p, q).unwrap();
                }
            }
        })
    });
}

fn metric(c: &mut Criterion) {
    let spec = catalog("iwasawa_ak").unwrap();
    let f = parse_form(
        3,
        "phi[1,3;2] + phi[2,3;1] + (0,-2)*phi[2,3;2] + (1/3,0)*phi[1;1,2]",
    )
    .unwrap();
    c.bench_function("hodge star", |b| {
        b.iter(|| hodge_star(&spec, black_box(&f)).unwrap())
    });
    let g = f.degree_project(3);
    c.bench_function("primitive decomposition", |b| {
        b.iter(|| primitive_decompose(&spec, black_box(&g)).unwrap())
    });
}

fn validation(c: &mut Criterion) {
    let spec = catalog("torus6").unwrap();
    c.bench_function("torus integrability relations", |b| {
        b.iter(|| check_integrability_relations(black_box(&spec)))
    });
    let ak = catalog("iwasawa_ak").unwrap();
    c.bench_function("bc21 gap statement", |b| {
        b.iter(|| verify_bc21_gap(black_box(&ak)).unwrap())
    });
}

criterion_group!(benches, harmonic_spaces, metric, validation);
criterion_main!(benches);
