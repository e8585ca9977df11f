//! Concrete field and endomorphism formulas.

use super::dual::Real;
use super::linalg::{self, Mat};
use super::manifold::LevelSetManifold;
use super::{EndoRef, FieldRef, Scalar};
use crate::algebra::{qmul, Quaternion};

/// An ambient vector field written once over every [`Scalar`].
pub trait SmoothField: Send + Sync {
    fn dim(&self) -> usize;
    fn at<T: Scalar>(&self, x: &[T]) -> Vec<T>;
}

/// A field of linear maps written once over every [`Scalar`].
pub trait SmoothEndo: Send + Sync {
    fn dim(&self) -> usize;
    fn apply<T: Scalar>(&self, x: &[T], v: &[T]) -> Vec<T>;
}

fn matvec_lifted<T: Real>(a: &Mat<f64>, v: &[T]) -> Vec<T> {
    (0..a.rows)
        .map(|r| a.row(r).iter().zip(v).fold(T::zero(), |acc, (&m, &x)| acc + x.scale(m)))
        .collect()
}

/// `x ↦ Ax + b`.
#[derive(Clone, Debug)]
pub struct AffineField {
    pub a: Mat<f64>,
    pub b: Vec<f64>,
}

impl AffineField {
    pub fn linear(a: Mat<f64>) -> Self {
        let b = vec![0.0; a.rows];
        AffineField { a, b }
    }

    pub fn constant(b: Vec<f64>) -> Self {
        let n = b.len();
        AffineField { a: Mat::zeros(n, n), b }
    }
}

impl SmoothField for AffineField {
    fn dim(&self) -> usize {
        self.a.rows
    }
    fn at<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        let mut out = matvec_lifted(&self.a, x);
        for (o, &b) in out.iter_mut().zip(&self.b) {
            *o += T::cst(b);
        }
        out
    }
}

/// Tangential part of an ambient field: `x ↦ P(x) X(x)`.
#[derive(Clone)]
pub struct TangentExtension {
    pub manifold: LevelSetManifold,
    pub inner: FieldRef,
}

impl SmoothField for TangentExtension {
    fn dim(&self) -> usize {
        self.manifold.ambient_dim()
    }
    fn at<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        let v = T::field(&*self.inner, x);
        self.manifold.tangent_part(x, &v)
    }
}

/// `x ↦ E(x) X(x)`.
#[derive(Clone)]
pub struct EndoApplied {
    pub endo: EndoRef,
    pub field: FieldRef,
}

impl SmoothField for EndoApplied {
    fn dim(&self) -> usize {
        self.field.ambient_dim()
    }
    fn at<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        let v = T::field(&*self.field, x);
        T::endo(&*self.endo, x, &v)
    }
}

#[derive(Clone)]
pub struct ScaledField {
    pub factor: f64,
    pub field: FieldRef,
}

impl SmoothField for ScaledField {
    fn dim(&self) -> usize {
        self.field.ambient_dim()
    }
    fn at<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        T::field(&*self.field, x)
            .into_iter()
            .map(|v| v.scale(self.factor))
            .collect()
    }
}

/// Constant linear map `v ↦ Av`, independent of the base point.
#[derive(Clone, Debug)]
pub struct LinearEndo {
    pub a: Mat<f64>,
}

impl SmoothEndo for LinearEndo {
    fn dim(&self) -> usize {
        self.a.rows
    }
    fn apply<T: Scalar>(&self, _x: &[T], v: &[T]) -> Vec<T> {
        matvec_lifted(&self.a, v)
    }
}

/// `v ↦ P(x) E(x) v`: an ambient endomorphism followed by tangential projection.
#[derive(Clone)]
pub struct ProjectedEndo {
    pub manifold: LevelSetManifold,
    pub inner: EndoRef,
}

impl SmoothEndo for ProjectedEndo {
    fn dim(&self) -> usize {
        self.manifold.ambient_dim()
    }
    fn apply<T: Scalar>(&self, x: &[T], v: &[T]) -> Vec<T> {
        let w = T::endo(&*self.inner, x, v);
        self.manifold.tangent_part(x, &w)
    }
}

#[derive(Clone)]
pub struct ScaledEndo {
    pub factor: f64,
    pub endo: EndoRef,
}

impl SmoothEndo for ScaledEndo {
    fn dim(&self) -> usize {
        self.endo.ambient_dim()
    }
    fn apply<T: Scalar>(&self, x: &[T], v: &[T]) -> Vec<T> {
        T::endo(&*self.endo, x, v)
            .into_iter()
            .map(|w| w.scale(self.factor))
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IdentityEndo {
    pub dim: usize,
}

impl SmoothEndo for IdentityEndo {
    fn dim(&self) -> usize {
        self.dim
    }
    fn apply<T: Scalar>(&self, _x: &[T], v: &[T]) -> Vec<T> {
        v.to_vec()
    }
}

/// Metric dual of a vector field: `η(v) = ⟨X(p), v⟩`.
#[derive(Clone)]
pub struct OneForm {
    pub field: FieldRef,
}

impl OneForm {
    pub fn dual_of(field: FieldRef) -> Self {
        OneForm { field }
    }

    pub fn eval(&self, p: &[f64], v: &[f64]) -> f64 {
        linalg::dot(&self.field.eval_f64(p), v)
    }

    pub fn eval_generic<T: Scalar>(&self, x: &[T], v: &[T]) -> T {
        linalg::dot(&T::field(&*self.field, x), v)
    }
}

fn quaternion_block(q: Quaternion<f64>, left: bool) -> Mat<f64> {
    let basis = [Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()];
    let mut m = Mat::zeros(4, 4);
    for (c, e) in basis.into_iter().enumerate() {
        let col = if left { qmul(q, e) } else { qmul(e, q) }.to_array();
        for (r, v) in col.into_iter().enumerate() {
            m[(r, c)] = v;
        }
    }
    m
}

/// Multiplication by `i` on `ℂ^{N/2} ≅ ℝᴺ`: `(a, b) ↦ (−b, a)` on each pair.
pub fn complex_structure_matrix(dim: usize) -> Mat<f64> {
    Mat::from_fn(dim, dim, |r, c| {
        if r % 2 == 1 && c == r - 1 {
            1.0
        } else if r % 2 == 0 && c == r + 1 {
            -1.0
        } else {
            0.0
        }
    })
}

/// Entrywise left multiplication `h ↦ (q h₀, …, q hₙ)` on `ℍⁿ⁺¹ ≅ ℝ^{4n+4}`.
pub fn quaternion_left_matrix(q: Quaternion<f64>, entries: usize) -> Mat<f64> {
    Mat::block_diag(&vec![quaternion_block(q, true); entries])
}

/// Entrywise right multiplication `h ↦ (h₀ q, …, hₙ q)`.
pub fn quaternion_right_matrix(q: Quaternion<f64>, entries: usize) -> Mat<f64> {
    Mat::block_diag(&vec![quaternion_block(q, false); entries])
}
