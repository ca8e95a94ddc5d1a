use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use isodil_core::*;
use nalgebra::Vector2;

const QUINCUNX: IntMatrix2 = IntMatrix2::new(1, -1, 1, 1);
const EXAMPLE: IntMatrix2 = IntMatrix2::new(0, -2, 1, 1);

fn analysis(c: &mut Criterion) {
    c.bench_function("classify_angle", |b| b.iter(|| classify_angle(black_box(&EXAMPLE))));
    c.bench_function("decompose", |b| b.iter(|| decompose(black_box(&EXAMPLE)).unwrap()));
    c.bench_function("invariant_form+rationalize", |b| {
        b.iter(|| rationalize_form(&invariant_form(black_box(&EXAMPLE)).unwrap(), 64))
    });
    c.bench_function("angle_table 50x14", |b| b.iter(|| angle_table(black_box(50), 14)));
}

fn refinement(c: &mut Criterion) {
    let haar = Mask::quincunx_haar();
    let xi = Vector2::new(1.3, -2.2);
    c.bench_function("phi_hat depth 40", |b| {
        b.iter(|| phi_hat(&haar, &QUINCUNX, black_box(&xi), 40, Tail::Centroid).unwrap())
    });
    c.bench_function("verify j'=3, 200 samples", |b| {
        b.iter(|| verify_two_angle(&haar, &QUINCUNX, 3, 200, 0, 40, Tail::Centroid).unwrap())
    });
    let spec = GridSpec::new(64, 4.0 * PI, GridTarget::SpatialReconstruction).unwrap();
    c.bench_function("render 64x64 spatial", |b| {
        b.iter(|| render_grid(&haar, &QUINCUNX, black_box(&spec), 40).unwrap())
    });
}

criterion_group!(benches, analysis, refinement);
criterion_main!(benches);
