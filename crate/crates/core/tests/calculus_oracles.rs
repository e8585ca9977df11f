use std::sync::Arc;

use hopfcx::geometry::{
    bracket_raw, covariant_derivative, extend, exterior_d, killing_residual, lie_bracket, lie_derivative_endo,
    point_rng, AffineField, EndoRef, Extension, FieldRef, IdentityEndo, LevelSetManifold, Mat, Scalar, SmoothField,
    TangentExtension, VectorField,
};
use proptest::prelude::*;

/// A polynomial field on `ℝ³` with nonconstant Jacobian.
struct Cubic;

impl SmoothField for Cubic {
    fn dim(&self) -> usize {
        3
    }
    fn at<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        vec![x[0] * x[1], x[0] * x[0] - x[2], x[0] + x[2] * x[2] * x[2]]
    }
}

struct Quadratic;

impl SmoothField for Quadratic {
    fn dim(&self) -> usize {
        3
    }
    fn at<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        vec![x[2], x[0] * x[1], x[1] * x[1] + T::cst(0.5) * x[0]]
    }
}

/// Fourth-order central difference of `t ↦ f(p + t v)` at 0.
fn fd<F: Fn(&[f64]) -> Vec<f64>>(f: F, p: &[f64], v: &[f64]) -> Vec<f64> {
    let h = 1e-3;
    let at = |s: f64| f(&p.iter().zip(v).map(|(a, b)| a + s * b).collect::<Vec<_>>());
    let (a, b, c, d) = (at(-2.0 * h), at(-h), at(h), at(2.0 * h));
    (0..a.len())
        .map(|i| (a[i] - 8.0 * b[i] + 8.0 * c[i] - d[i]) / (12.0 * h))
        .collect()
}

fn fd_scalar<F: Fn(&[f64]) -> f64>(f: F, p: &[f64], v: &[f64]) -> f64 {
    fd(|x| vec![f(x)], p, v)[0]
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn antisymmetric(n: usize, seed: u64) -> Mat<f64> {
    let mut rng = point_rng(seed, 0);
    let g: Vec<f64> = (0..n * n)
        .map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0))
        .collect();
    Mat::from_fn(n, n, |r, c| g[r * n + c] - g[c * n + r])
}

fn tangent_field(m: &LevelSetManifold, inner: FieldRef) -> FieldRef {
    Arc::new(TangentExtension {
        manifold: m.clone(),
        inner,
    })
}

proptest! {
    #[test]
    fn bracket_matches_finite_differences(p in prop::array::uniform3(-1.0..1.0f64)) {
        let (x, y) = (Cubic, Quadratic);
        let got = bracket_raw(&x, &y, &p);
        let dy_x = fd(|z| y.eval_f64(z), &p, &x.eval_f64(&p));
        let dx_y = fd(|z| x.eval_f64(z), &p, &y.eval_f64(&p));
        let oracle: Vec<f64> = dy_x.iter().zip(&dx_y).map(|(a, b)| a - b).collect();
        let diff: Vec<f64> = got.iter().zip(&oracle).map(|(a, b)| a - b).collect();
        prop_assert!(max_abs(&diff) < 1e-8);
    }
}

#[test]
fn constant_fields_commute() {
    let a = AffineField::constant(vec![1.0, -2.0, 0.5]);
    let b = AffineField::constant(vec![0.3, 0.0, 4.0]);
    assert_eq!(max_abs(&bracket_raw(&a, &b, &[0.2, 0.1, -0.7])), 0.0);
}

/// For `η` dual to `x ↦ Ax` with `A` antisymmetric, `dη(X, Y) = 2⟨AX, Y⟩`
/// independently of how `X` and `Y` are extended.
#[test]
fn exterior_derivative_of_rotation_dual() {
    let m = LevelSetManifold::unit_sphere(5);
    let a = antisymmetric(5, 1);
    let eta = AffineField::linear(a.clone());
    let pts = m.sample(20, 3).unwrap();
    for (k, p) in pts.points.iter().enumerate() {
        let mut rng = point_rng(4, k as u64);
        let v = m.random_tangent(p, &mut rng);
        let w = m.random_tangent(p, &mut rng);
        let x = extend(&m, p, &v, Extension::Tilted(k as u64));
        let y = extend(&m, p, &w, Extension::Tilted(100 + k as u64));
        let d = exterior_d(&m, &eta, &*x, &*y, p).unwrap();
        let oracle = 2.0 * dot(&a.matvec(&v), &w);
        assert!((d - oracle).abs() < 1e-12, "{d} vs {oracle}");
        assert!(exterior_d(&m, &eta, &*x, &*x, p).unwrap().abs() < 1e-13);
    }
}

/// Cartan's formula evaluated with finite differences of the ambient
/// functions `η(Y)`, `η(X)` and the fields.
#[test]
fn exterior_derivative_matches_finite_differences() {
    let m = LevelSetManifold::unit_sphere(4);
    let eta = Cubic4;
    let pts = m.sample(10, 8).unwrap();
    for (k, p) in pts.points.iter().enumerate() {
        let mut rng = point_rng(9, k as u64);
        let x = extend(&m, p, &m.random_tangent(p, &mut rng), Extension::Tilted(k as u64));
        let y = extend(&m, p, &m.random_tangent(p, &mut rng), Extension::Tilted(50 + k as u64));
        let (xp, yp) = (x.eval_f64(p), y.eval_f64(p));
        let x_eta_y = fd_scalar(|z| dot(&eta.eval_f64(z), &y.eval_f64(z)), p, &xp);
        let y_eta_x = fd_scalar(|z| dot(&eta.eval_f64(z), &x.eval_f64(z)), p, &yp);
        let dy_x = fd(|z| y.eval_f64(z), p, &xp);
        let dx_y = fd(|z| x.eval_f64(z), p, &yp);
        let br: Vec<f64> = dy_x.iter().zip(&dx_y).map(|(a, b)| a - b).collect();
        let oracle = x_eta_y - y_eta_x - dot(&eta.eval_f64(p), &br);
        let d = exterior_d(&m, &eta, &*x, &*y, p).unwrap();
        assert!((d - oracle).abs() < 1e-8, "{d} vs {oracle}");
    }
}

struct Cubic4;

impl SmoothField for Cubic4 {
    fn dim(&self) -> usize {
        4
    }
    fn at<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        vec![x[1] * x[2], x[3] * x[3], x[0] * x[1] * x[3], x[2] - x[0]]
    }
}

/// `η = df` for a linear `f` restricted to the sphere is closed.
#[test]
fn gradient_one_form_is_closed() {
    let m = LevelSetManifold::unit_sphere(6);
    let a = vec![0.3, -1.0, 0.2, 0.7, 0.0, 1.5];
    let eta = tangent_field(&m, Arc::new(AffineField::constant(a)));
    let pts = m.sample(10, 2).unwrap();
    for (k, p) in pts.points.iter().enumerate() {
        let mut rng = point_rng(2, k as u64);
        let x = extend(&m, p, &m.random_tangent(p, &mut rng), Extension::Tilted(k as u64));
        let y = extend(&m, p, &m.random_tangent(p, &mut rng), Extension::Projected);
        assert!(exterior_d(&m, &*eta, &*x, &*y, p).unwrap().abs() < 1e-12);
    }
}

#[test]
fn rotation_fields_are_killing() {
    let m = LevelSetManifold::unit_sphere(5);
    let rot = AffineField::linear(antisymmetric(5, 7));
    let pts = m.sample(20, 5).unwrap();
    for (k, p) in pts.points.iter().enumerate() {
        let mut rng = point_rng(5, k as u64);
        let v = m.random_tangent(p, &mut rng);
        let w = m.random_tangent(p, &mut rng);
        assert!(killing_residual(&m, &rot, p, &v, &w).unwrap().abs() < 1e-13);
    }
}

/// The tangential part of `x ↦ (x·e₁) e₂` on `S²` is not Killing at
/// `(e₁ + e₃)/√2`: with `v = e₂`, `w = (e₁ − e₃)/√2` the residual is `1/√2`.
#[test]
fn non_isometric_field_is_not_killing() {
    let m = LevelSetManifold::unit_sphere(3);
    let a = Mat::from_fn(3, 3, |r, c| if (r, c) == (1, 0) { 1.0 } else { 0.0 });
    let x = tangent_field(&m, Arc::new(AffineField::linear(a)));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let p = [s, 0.0, s];
    let r = killing_residual(&m, &*x, &p, &[0.0, 1.0, 0.0], &[s, 0.0, -s]).unwrap();
    assert!((r - s).abs() < 1e-14, "{r}");
}

#[test]
fn circle_reeb_field_is_geodesic() {
    let m = LevelSetManifold::unit_sphere(2);
    let xi = AffineField::linear(Mat::from_fn(2, 2, |r, c| match (r, c) {
        (0, 1) => -1.0,
        (1, 0) => 1.0,
        _ => 0.0,
    }));
    for t in [0.0, 0.4, 2.0, 5.1f64] {
        let p = [t.cos(), t.sin()];
        let v = xi.eval_f64(&p);
        assert!(max_abs(&covariant_derivative(&m, &xi, &p, &v).unwrap()) < 1e-15);
    }
}

/// Torsion freedom and metric compatibility of `∇_v X = P(p) DX(p)[v]`.
#[test]
fn levi_civita_properties() {
    let m = LevelSetManifold::unit_sphere(6);
    let pts = m.sample(100, 12).unwrap();
    for (k, p) in pts.points.iter().enumerate() {
        let mut rng = point_rng(12, k as u64);
        let (v, w, u) = (
            m.random_tangent(p, &mut rng),
            m.random_tangent(p, &mut rng),
            m.random_tangent(p, &mut rng),
        );
        let x = extend(&m, p, &v, Extension::Tilted(3 * k as u64));
        let y = extend(&m, p, &w, Extension::Tilted(3 * k as u64 + 1));
        let nxy = covariant_derivative(&m, &*y, p, &v).unwrap();
        let nyx = covariant_derivative(&m, &*x, p, &w).unwrap();
        let br = lie_bracket(&m, &*x, &*y, p).unwrap();
        let torsion: Vec<f64> = (0..p.len()).map(|i| nxy[i] - nyx[i] - br[i]).collect();
        assert!(max_abs(&torsion) < 1e-12);

        let lhs = fd_scalar(|z| dot(&x.eval_f64(z), &y.eval_f64(z)), p, &u);
        let rhs = dot(&covariant_derivative(&m, &*x, p, &u).unwrap(), &w)
            + dot(&v, &covariant_derivative(&m, &*y, p, &u).unwrap());
        assert!((lhs - rhs).abs() < 1e-9, "{lhs} vs {rhs}");
    }
}

#[test]
fn lie_derivative_of_identity_vanishes() {
    let m = LevelSetManifold::unit_sphere(4);
    let xi: FieldRef = Arc::new(AffineField::linear(antisymmetric(4, 2)));
    let id: EndoRef = Arc::new(IdentityEndo { dim: 4 });
    let pts = m.sample(10, 1).unwrap();
    for (k, p) in pts.points.iter().enumerate() {
        let mut rng = point_rng(1, k as u64);
        let x = extend(&m, p, &m.random_tangent(p, &mut rng), Extension::Tilted(k as u64));
        assert!(max_abs(&lie_derivative_endo(&m, &xi, &id, &x, p).unwrap()) < 1e-14);
    }
}

#[test]
fn tangency_is_enforced() {
    let m = LevelSetManifold::unit_sphere(3);
    let p = [1.0, 0.0, 0.0];
    let radial = AffineField::linear(Mat::identity(3));
    let other = AffineField::constant(vec![0.0, 1.0, 0.0]);
    assert!(matches!(
        lie_bracket(&m, &radial, &other, &p),
        Err(hopfcx::Error::TangencyViolation { .. })
    ));
}
