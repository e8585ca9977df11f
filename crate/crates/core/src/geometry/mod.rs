//! Level-set submanifolds of Euclidean space and first-order calculus on them.
//!
//! A manifold is `M = {x ∈ ℝᴺ : F(x) = 0}` with `F` polynomial. Fields are
//! ambient formulas `ℝᴺ → ℝᴺ`, endomorphism fields are ambient formulas
//! `(x, v) ↦ E(x)v`. Every formula is written once, generically over
//! [`Scalar`], and then evaluated either on `f64` or on dual numbers to get
//! exact directional derivatives.
//!
//! The metric is always the restriction of the ambient Euclidean inner product.

pub mod calculus;
pub mod dual;
pub mod fields;
pub mod linalg;
pub mod manifold;

use std::sync::Arc;

pub use calculus::{
    bracket_raw, covariant_derivative, derivative, extend, exterior_d, exterior_d_two_form, killing_residual,
    lie_bracket, lie_derivative_endo, nijenhuis_tensor, phi_torsion, Extension,
};
pub use dual::{Dual, Real, D1, D2};
pub use fields::{
    complex_structure_matrix, quaternion_left_matrix, quaternion_right_matrix, AffineField, EndoApplied, IdentityEndo,
    LinearEndo, OneForm, ProjectedEndo, ScaledEndo, ScaledField, SmoothEndo, SmoothField, TangentExtension,
};
pub use linalg::Mat;
pub use manifold::{
    point_rng, ConstraintMap, LevelSetManifold, Point, PolynomialMap, SampleSet, Seeder, Tolerances, UnitSphere,
};

/// A tangent (or ambient) vector field, evaluable on floats and dual numbers.
pub trait VectorField: Send + Sync {
    fn ambient_dim(&self) -> usize;
    fn eval_f64(&self, x: &[f64]) -> Vec<f64>;
    fn eval_d1(&self, x: &[D1]) -> Vec<D1>;
}

/// A pointwise linear map on tangent vectors, smooth in the base point.
pub trait EndomorphismField: Send + Sync {
    fn ambient_dim(&self) -> usize;
    fn apply_f64(&self, x: &[f64], v: &[f64]) -> Vec<f64>;
    fn apply_d1(&self, x: &[D1], v: &[D1]) -> Vec<D1>;
}

pub type FieldRef = Arc<dyn VectorField>;
pub type EndoRef = Arc<dyn EndomorphismField>;

/// Scalars the dynamic field and constraint objects can be evaluated on.
///
/// Implemented for `f64` and [`D1`]. Constraint maps are additionally
/// evaluated one level up (`Dual<Self>`) to form Jacobians.
pub trait Scalar: Real {
    fn constraint(c: &dyn ConstraintMap, x: &[Self]) -> Vec<Self>;
    fn constraint_lifted(c: &dyn ConstraintMap, x: &[Dual<Self>]) -> Vec<Dual<Self>>;
    fn field(f: &dyn VectorField, x: &[Self]) -> Vec<Self>;
    fn endo(e: &dyn EndomorphismField, x: &[Self], v: &[Self]) -> Vec<Self>;
}

impl Scalar for f64 {
    fn constraint(c: &dyn ConstraintMap, x: &[Self]) -> Vec<Self> {
        c.eval_f64(x)
    }
    fn constraint_lifted(c: &dyn ConstraintMap, x: &[D1]) -> Vec<D1> {
        c.eval_d1(x)
    }
    fn field(f: &dyn VectorField, x: &[Self]) -> Vec<Self> {
        f.eval_f64(x)
    }
    fn endo(e: &dyn EndomorphismField, x: &[Self], v: &[Self]) -> Vec<Self> {
        e.apply_f64(x, v)
    }
}

impl Scalar for D1 {
    fn constraint(c: &dyn ConstraintMap, x: &[Self]) -> Vec<Self> {
        c.eval_d1(x)
    }
    fn constraint_lifted(c: &dyn ConstraintMap, x: &[D2]) -> Vec<D2> {
        c.eval_d2(x)
    }
    fn field(f: &dyn VectorField, x: &[Self]) -> Vec<Self> {
        f.eval_d1(x)
    }
    fn endo(e: &dyn EndomorphismField, x: &[Self], v: &[Self]) -> Vec<Self> {
        e.apply_d1(x, v)
    }
}

impl<F: SmoothField> VectorField for F {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }
    fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        self.at(x)
    }
    fn eval_d1(&self, x: &[D1]) -> Vec<D1> {
        self.at(x)
    }
}

impl<E: SmoothEndo> EndomorphismField for E {
    fn ambient_dim(&self) -> usize {
        self.dim()
    }
    fn apply_f64(&self, x: &[f64], v: &[f64]) -> Vec<f64> {
        self.apply(x, v)
    }
    fn apply_d1(&self, x: &[D1], v: &[D1]) -> Vec<D1> {
        self.apply(x, v)
    }
}
