//! Fixtures shared by the kernel benchmarks.

use hopfcx::geometry::point_rng;
use hopfcx::instances::stiefel_complex;
use hopfcx::{ConventionPoint, FiberMatrix, JStructure, Point};

/// `J` on `V₂(ℂ³)` with the default convention and fiber matrix, plus a
/// sampled point and two tangent vectors there.
pub struct NijenhuisFixture {
    pub j: JStructure,
    pub point: Point,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
}

pub fn nijenhuis_fixture() -> NijenhuisFixture {
    let bundle = stiefel_complex(2, &ConventionPoint::default()).unwrap().1;
    let point = bundle.total.sample(1, 42).unwrap().points.remove(0);
    let mut rng = point_rng(42, 1);
    let v = bundle.total.random_tangent(&point, &mut rng);
    let w = bundle.total.random_tangent(&point, &mut rng);
    let j = JStructure::new(bundle, FiberMatrix::standard()).unwrap();
    NijenhuisFixture { j, point, v, w }
}

/// Deterministic pseudo-random coordinates in `[-1, 1)`.
pub fn coords(len: usize, seed: u64) -> Vec<f64> {
    use rand::Rng;
    let mut rng = point_rng(seed, 0);
    (0..len).map(|_| rng.random_range(-1.0..1.0)).collect()
}
