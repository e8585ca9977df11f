use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hopfcx::algebra::{omul, qmul};
use hopfcx::hopf::nijenhuis;
use hopfcx::instances::{InstanceDescriptor, InstanceKind};
use hopfcx::{ConventionPoint, Octonion, Quaternion};
use hopfcx_bench::{coords, nijenhuis_fixture};

fn algebra(c: &mut Criterion) {
    let q = coords(8, 1);
    let (a, b) = (
        Quaternion::new(q[0], q[1], q[2], q[3]),
        Quaternion::new(q[4], q[5], q[6], q[7]),
    );
    c.bench_function("qmul", |bench| bench.iter(|| qmul(black_box(a), black_box(b))));
    let o = coords(16, 2);
    let (x, y) = (Octonion::from_slice(&o[..8]), Octonion::from_slice(&o[8..]));
    c.bench_function("omul", |bench| bench.iter(|| omul(black_box(x), black_box(y))));
}

fn manifolds(c: &mut Criterion) {
    let m = InstanceDescriptor::build(InstanceKind::StiefelComplex, 2, ConventionPoint::default())
        .unwrap()
        .manifold;
    let g = coords(12, 3);
    c.bench_function("project_v2_c3", |bench| {
        bench.iter(|| m.project(black_box(&g)).unwrap())
    });
    let p = m.project(&g).unwrap();
    c.bench_function("tangent_projector_v2_c3", |bench| {
        bench.iter(|| m.tangent_projector(black_box(&p)).unwrap())
    });
    c.bench_function("sample_100_v2_c3", |bench| {
        bench.iter(|| m.sample(100, black_box(7)).unwrap())
    });
}

fn integrability(c: &mut Criterion) {
    let f = nijenhuis_fixture();
    c.bench_function("nijenhuis_v2_c3", |bench| {
        bench.iter(|| nijenhuis(&f.j, black_box(&f.v), black_box(&f.w), black_box(&f.point)).unwrap())
    });
}

criterion_group!(benches, algebra, manifolds, integrability);
criterion_main!(benches);
