//! Induced Hopf S³-bundles over Sasakian manifolds and the almost complex
//! structure `J` on their total spaces.
//!
//! A bundle is given upstairs, on a level set `P`: three vertical fields
//! `ξ₁, ξ₂, ξ₃`, a horizontal unit field `ξ*` lifting the base Reeb field, and an
//! ambient formula for the lifted `φ̂`, which is projected onto
//! `H′ = (span{ξ₁, ξ₂, ξ₃, ξ*})^⊥ ∩ TP`.
//!
//! `J` is evaluated by orthogonal decomposition of a tangent vector:
//!
//! - `Jξ₁ = ξ₂`, `Jξ₂ = −ξ₁`;
//! - `Jξ* = αξ* + βξ₃`, `Jξ₃ = γξ* + δξ₃` for a constant [`FiberMatrix`];
//! - `JX = φ̂X` on `H′`.

mod verify;

use std::sync::Arc;

use rand::Rng;

use crate::algebra::Quaternion;
use crate::error::{Error, Result};
use crate::geometry::linalg::{self, Mat};
use crate::geometry::{quaternion_right_matrix, EndoRef, FieldRef, LevelSetManifold, Scalar, SmoothEndo};

pub use verify::{
    anchors, automorphism_and_nonkaehler_checks, check_bundle, check_theorem_conditions, curvature, ids, nijenhuis,
    verify_complex_structure, verify_j_structure,
};

/// Constant matrix of `J` on `span{ξ*, ξ₃}`: `Jξ* = αξ* + βξ₃`, `Jξ₃ = γξ* + δξ₃`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FiberMatrix {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

const FIBER_TOL: f64 = 1e-12;

impl FiberMatrix {
    /// Checked constructor: trace 0 and determinant 1 to `1e-12`.
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let m = FiberMatrix {
            alpha,
            beta,
            gamma,
            delta,
        };
        m.validate()?;
        Ok(m)
    }

    /// `(0, −1, 1, 0)`: `Jξ* = −ξ₃`, `Jξ₃ = ξ*`.
    pub fn standard() -> Self {
        FiberMatrix {
            alpha: 0.0,
            beta: -1.0,
            gamma: 1.0,
            delta: 0.0,
        }
    }

    pub fn trace(&self) -> f64 {
        self.alpha + self.delta
    }

    pub fn det(&self) -> f64 {
        self.alpha * self.delta - self.beta * self.gamma
    }

    pub fn validate(&self) -> Result<()> {
        let (trace, det) = (self.trace(), self.det());
        if trace.abs() > FIBER_TOL || (det - 1.0).abs() > FIBER_TOL || !trace.is_finite() {
            return Err(Error::BadFiberMatrix { trace, det });
        }
        Ok(())
    }

    pub fn is_standard(&self) -> bool {
        *self == Self::standard()
    }

    /// A random admissible matrix: `α, β` drawn, `δ = −α`, `γ = −(1 + α²)/β`.
    pub fn random(rng: &mut impl Rng) -> Self {
        let alpha: f64 = rng.random_range(-2.0..2.0);
        let mag: f64 = rng.random_range(0.3..2.0);
        let beta = if rng.random::<bool>() { mag } else { -mag };
        FiberMatrix {
            alpha,
            beta,
            gamma: -(1.0 + alpha * alpha) / beta,
            delta: -alpha,
        }
    }

    /// Hopf surfaces `(ℂ²∖0)/⟨λ⟩` with real `λ > 1` carry the standard matrix.
    /// The matrix for complex `λ` is not tabulated here.
    pub fn for_real_lambda(lambda: f64) -> Option<Self> {
        (lambda > 1.0).then(Self::standard)
    }
}

/// The linear right action `h ↦ hq` on a block of quaternion coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RightAction {
    /// First ambient coordinate of the acted-on block.
    pub offset: usize,
    /// Number of quaternion entries in the block.
    pub entries: usize,
}

impl RightAction {
    pub fn matrix(&self, ambient: usize, q: Quaternion<f64>) -> Mat<f64> {
        let r = quaternion_right_matrix(q, self.entries);
        let mut m = Mat::identity(ambient);
        for i in 0..r.rows {
            for j in 0..r.cols {
                m[(self.offset + i, self.offset + j)] = r[(i, j)];
            }
        }
        m
    }
}

/// `(P, ξ₁, ξ₂, ξ₃, ξ*, φ̂)` on a total-space level set.
#[derive(Clone)]
pub struct HopfBundleInstance {
    pub name: String,
    pub total: LevelSetManifold,
    pub verticals: [FieldRef; 3],
    pub xistar: FieldRef,
    /// Ambient formula for `φ̂`; its output is projected onto `H′`.
    pub phihat: EndoRef,
    pub action: RightAction,
}

impl std::fmt::Debug for HopfBundleInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HopfBundleInstance")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("action", &self.action)
            .finish_non_exhaustive()
    }
}

/// Components of a vector in the splitting `span{ξᵢ} ⊕ span{ξ*} ⊕ H′`.
pub(crate) struct Split<T> {
    pub vertical: [T; 3],
    pub reeb: T,
    pub horizontal: Vec<T>,
}

/// Fields evaluated at one point, with the normal space factored.
pub(crate) struct Frame<T> {
    pub xi: [Vec<T>; 3],
    pub xistar: Vec<T>,
    ns: Option<crate::geometry::manifold::NormalSpace<T>>,
}

impl<T: Scalar> Frame<T> {
    pub fn tangent(&self, v: &[T]) -> Vec<T> {
        match &self.ns {
            Some(ns) => ns.tangent_part(v),
            None => vec![T::cst(f64::NAN); v.len()],
        }
    }

    /// Orthogonal projection onto `H′`, given an already tangent vector.
    fn strip(&self, v: &mut [T]) -> ([T; 3], T) {
        let mut a = [T::zero(); 3];
        for (ai, x) in a.iter_mut().zip(&self.xi) {
            *ai = linalg::dot(v, x);
        }
        let a_star = linalg::dot(v, &self.xistar);
        for (ai, x) in a.iter().zip(&self.xi) {
            linalg::axpy(-*ai, x, v);
        }
        linalg::axpy(-a_star, &self.xistar, v);
        (a, a_star)
    }

    pub fn split(&self, v: &[T]) -> Split<T> {
        let mut h = self.tangent(v);
        let (vertical, reeb) = self.strip(&mut h);
        Split {
            vertical,
            reeb,
            horizontal: h,
        }
    }

    pub fn project_horizontal(&self, v: &[T]) -> Vec<T> {
        self.split(v).horizontal
    }
}

impl HopfBundleInstance {
    pub fn new(
        name: impl Into<String>,
        total: LevelSetManifold,
        verticals: [FieldRef; 3],
        xistar: FieldRef,
        phihat: EndoRef,
        action: RightAction,
    ) -> Self {
        HopfBundleInstance {
            name: name.into(),
            total,
            verticals,
            xistar,
            phihat,
            action,
        }
    }

    /// [`HopfBundleInstance::new`] followed by validation of the bundle
    /// invariants at a small seeded probe set.
    pub fn build(
        name: impl Into<String>,
        total: LevelSetManifold,
        verticals: [FieldRef; 3],
        xistar: FieldRef,
        phihat: EndoRef,
        action: RightAction,
    ) -> Result<Self> {
        let b = Self::new(name, total, verticals, xistar, phihat, action);
        let cfg = crate::probe::ProbeConfig::new(8, 2, 0x5eed, 1e-9);
        let rep = check_bundle(&b, &cfg);
        if !rep.errors.is_empty() {
            return Err(Error::StructureViolation(rep.errors));
        }
        let failed: Vec<String> = rep
            .failures()
            .map(|c| format!("{} (max residual {:e})", c.id, c.max()))
            .collect();
        if failed.is_empty() {
            Ok(b)
        } else {
            Err(Error::StructureViolation(failed))
        }
    }

    pub fn dim(&self) -> usize {
        self.total.expected_dim()
    }

    /// `dim H′ = dim P − 4`.
    pub fn horizontal_dim(&self) -> usize {
        self.dim().saturating_sub(4)
    }

    pub(crate) fn frame<T: Scalar>(&self, x: &[T]) -> Frame<T> {
        Frame {
            xi: [0, 1, 2].map(|i| T::field(&*self.verticals[i], x)),
            xistar: T::field(&*self.xistar, x),
            ns: self.total.normal_space(x),
        }
    }

    /// Orthogonal projector onto `H′` at `p`.
    pub fn horizontal_projector(&self, p: &[f64]) -> Result<Mat<f64>> {
        let mut proj = self.total.tangent_projector(p)?;
        let frame = self.frame(p);
        for v in frame.xi.iter().chain(std::iter::once(&frame.xistar)) {
            for r in 0..proj.rows {
                for c in 0..proj.cols {
                    proj[(r, c)] -= v[r] * v[c];
                }
            }
        }
        Ok(proj)
    }

    /// Projector onto the horizontal space `H = span{ξᵢ}^⊥ ∩ TP` (contains `ξ*`).
    pub fn connection_projector(&self, p: &[f64]) -> Result<Mat<f64>> {
        let mut proj = self.total.tangent_projector(p)?;
        for f in &self.verticals {
            let v = f.eval_f64(p);
            for r in 0..proj.rows {
                for c in 0..proj.cols {
                    proj[(r, c)] -= v[r] * v[c];
                }
            }
        }
        Ok(proj)
    }

    /// `φ̂` at `x`: the ambient formula on the `H′` part of `v`, projected to `H′`.
    pub fn phihat_at<T: Scalar>(&self, x: &[T], v: &[T]) -> Vec<T> {
        let frame = self.frame(x);
        self.phihat_in(&frame, x, &frame.project_horizontal(v))
    }

    fn phihat_in<T: Scalar>(&self, frame: &Frame<T>, x: &[T], h: &[T]) -> Vec<T> {
        let raw = T::endo(&*self.phihat, x, h);
        frame.project_horizontal(&raw)
    }

    pub fn phihat_ref(&self) -> EndoRef {
        Arc::new(PhiHat(self.clone()))
    }

    pub fn build_j(&self, fiber: FiberMatrix) -> Result<JStructure> {
        JStructure::new(self.clone(), fiber)
    }
}

/// `φ̂` as an endomorphism field (zero on the vertical and `ξ*` directions).
#[derive(Clone)]
pub struct PhiHat(pub HopfBundleInstance);

impl SmoothEndo for PhiHat {
    fn dim(&self) -> usize {
        self.0.total.ambient_dim()
    }
    fn apply<T: Scalar>(&self, x: &[T], v: &[T]) -> Vec<T> {
        self.0.phihat_at(x, v)
    }
}

/// The almost complex structure of an induced Hopf bundle for one fiber matrix.
#[derive(Clone)]
pub struct JStructure {
    pub bundle: HopfBundleInstance,
    pub fiber: FiberMatrix,
}

impl JStructure {
    pub fn new(bundle: HopfBundleInstance, fiber: FiberMatrix) -> Result<Self> {
        fiber.validate()?;
        Ok(JStructure { bundle, fiber })
    }

    pub fn as_endo(&self) -> EndoRef {
        Arc::new(self.clone())
    }
}

impl SmoothEndo for JStructure {
    fn dim(&self) -> usize {
        self.bundle.total.ambient_dim()
    }

    fn apply<T: Scalar>(&self, x: &[T], v: &[T]) -> Vec<T> {
        let b = &self.bundle;
        let frame = b.frame(x);
        let s = frame.split(v);
        let mut out = b.phihat_in(&frame, x, &s.horizontal);
        let [a1, a2, a3] = s.vertical;
        let m = &self.fiber;
        let cst = T::cst;
        linalg::axpy(a1, &frame.xi[1], &mut out);
        linalg::axpy(-a2, &frame.xi[0], &mut out);
        linalg::axpy(s.reeb * cst(m.alpha) + a3 * cst(m.gamma), &frame.xistar, &mut out);
        linalg::axpy(s.reeb * cst(m.beta) + a3 * cst(m.delta), &frame.xi[2], &mut out);
        out
    }
}
