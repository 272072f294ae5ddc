use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use mplab_core::exactlin::rat;
use mplab_core::momentpoly::{membership_in_c, real_moment_polytope, RealFormCase};
use mplab_core::numlab::{sample_orbit, FloatFlagPoint, Subgroup};
use mplab_core::reps::{n_invariant_subspace, SectionSpaceSpec};
use mplab_core::{InvolutionSpec, OrbitClass, RationalPolytope};

fn polytopes(c: &mut Criterion) {
    let pts: Vec<_> = (0..40i64).map(|i| vec![rat(i * 7 % 13, 3), rat(i * 5 % 11, 2), rat(i % 9, 4)]).collect();
    c.bench_function("hull_3d_40_points", |b| b.iter(|| RationalPolytope::hull(3, black_box(&pts)).unwrap()));
}

fn membership(c: &mut Criterion) {
    let x = OrbitClass::Dense.representative();
    c.bench_function("membership_in_c_dense_4_3", |b| {
        b.iter(|| membership_in_c(black_box(&x), 4, 3, &rat(11, 4)).unwrap())
    });
    let case = RealFormCase::new(x, InvolutionSpec::negation(1)).unwrap();
    c.bench_function("real_moment_polytope_dense_3_2", |b| {
        b.iter(|| real_moment_polytope(black_box(&case), 3, 2).unwrap())
    });
}

fn invariants(c: &mut Criterion) {
    let spec = SectionSpaceSpec::new(2, 3, 2).unwrap();
    c.bench_function("n_invariant_subspace_r2_3_2", |b| b.iter(|| n_invariant_subspace(black_box(&spec), 4)));
}

fn sampling(c: &mut Criterion) {
    let x = FloatFlagPoint::from(&OrbitClass::Dense.representative());
    c.bench_function("sample_orbit_h_10k", |b| {
        b.iter(|| sample_orbit(black_box(&x), 2.0, 1.0, Subgroup::H, 10_000, 0).unwrap())
    });
}

criterion_group!(benches, polytopes, membership, invariants, sampling);
criterion_main!(benches);
