//! First-order calculus on level sets: brackets, exterior derivatives, the
//! Levi-Civita connection of the induced metric and Nijenhuis tensors.
//!
//! Every operation takes fields defined on a neighbourhood of the base point
//! and differentiates them exactly in forward mode. Tensorial quantities do
//! not depend on how a tangent vector was extended to a field; [`Extension`]
//! offers two schemes so callers can check that.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::dual::{seed, tangent, D1};
use super::fields::{AffineField, EndoApplied, TangentExtension};
use super::linalg::{self, Mat};
use super::manifold::LevelSetManifold;
use super::{EndoRef, EndomorphismField, FieldRef, VectorField};
use crate::error::Result;

/// How a tangent vector `v` at `p` is extended to a tangent field near `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// `x ↦ P(x) v`
    Projected,
    /// `x ↦ P(x)(v + S(x − p))` with a random matrix `S` drawn from the seed.
    Tilted(u64),
}

pub fn extend(m: &LevelSetManifold, p: &[f64], v: &[f64], scheme: Extension) -> FieldRef {
    let n = m.ambient_dim();
    let inner = match scheme {
        Extension::Projected => AffineField::constant(v.to_vec()),
        Extension::Tilted(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let entries: Vec<f64> = (0..n * n).map(|_| 0.5 * rng.sample::<f64, _>(StandardNormal)).collect();
            let a = Mat::from_fn(n, n, |r, c| entries[r * n + c]);
            let ap = a.matvec(p);
            AffineField {
                a,
                b: linalg::sub(v, &ap),
            }
        }
    };
    Arc::new(TangentExtension {
        manifold: m.clone(),
        inner: Arc::new(inner),
    })
}

/// Ambient directional derivative `DX(p)[w]`.
pub fn derivative(x: &dyn VectorField, p: &[f64], w: &[f64]) -> Vec<f64> {
    tangent(&x.eval_d1(&seed(p, w)))
}

/// Derivative at `p` in direction `w` of a scalar function given on duals.
fn directional(p: &[f64], w: &[f64], f: impl Fn(&[D1]) -> D1) -> f64 {
    f(&seed(p, w)).eps
}

/// `[X, Y](p) = DY·X − DX·Y`, without tangency checks.
pub fn bracket_raw(x: &dyn VectorField, y: &dyn VectorField, p: &[f64]) -> Vec<f64> {
    let xp = x.eval_f64(p);
    let yp = y.eval_f64(p);
    linalg::sub(&derivative(y, p, &xp), &derivative(x, p, &yp))
}

fn require_tangent(m: &LevelSetManifold, p: &[f64], fields: &[&dyn VectorField]) -> Result<()> {
    for f in fields {
        m.check_tangent(p, &f.eval_f64(p))?;
    }
    Ok(())
}

pub fn lie_bracket(m: &LevelSetManifold, x: &dyn VectorField, y: &dyn VectorField, p: &[f64]) -> Result<Vec<f64>> {
    require_tangent(m, p, &[x, y])?;
    Ok(bracket_raw(x, y, p))
}

/// `dη(X,Y) = X(η(Y)) − Y(η(X)) − η([X,Y])`, Cartan's formula without a ½.
pub fn exterior_d(
    m: &LevelSetManifold,
    eta: &dyn VectorField,
    x: &dyn VectorField,
    y: &dyn VectorField,
    p: &[f64],
) -> Result<f64> {
    require_tangent(m, p, &[x, y])?;
    let x_eta_y = directional(p, &x.eval_f64(p), |z| linalg::dot(&eta.eval_d1(z), &y.eval_d1(z)));
    let y_eta_x = directional(p, &y.eval_f64(p), |z| linalg::dot(&eta.eval_d1(z), &x.eval_d1(z)));
    let eta_br = linalg::dot(&eta.eval_f64(p), &bracket_raw(x, y, p));
    Ok(x_eta_y - y_eta_x - eta_br)
}

/// `dω(X,Y,Z)` for `ω(A,B) = ⟨JA, B⟩` by the six-term Cartan formula.
pub fn exterior_d_two_form(
    m: &LevelSetManifold,
    j: &dyn EndomorphismField,
    x: &dyn VectorField,
    y: &dyn VectorField,
    z: &dyn VectorField,
    p: &[f64],
) -> Result<f64> {
    require_tangent(m, p, &[x, y, z])?;
    let omega_at = |a: &[f64], b: &[f64]| linalg::dot(&j.apply_f64(p, a), b);
    let d = |c: &dyn VectorField, a: &dyn VectorField, b: &dyn VectorField| {
        directional(p, &c.eval_f64(p), |w| {
            linalg::dot(&j.apply_d1(w, &a.eval_d1(w)), &b.eval_d1(w))
        })
    };
    let (xp, yp, zp) = (x.eval_f64(p), y.eval_f64(p), z.eval_f64(p));
    Ok(
        d(x, y, z) - d(y, x, z) + d(z, x, y) - omega_at(&bracket_raw(x, y, p), &zp)
            + omega_at(&bracket_raw(x, z, p), &yp)
            - omega_at(&bracket_raw(y, z, p), &xp),
    )
}

/// Levi-Civita connection of the induced metric: `∇_v X = P(p) DX(p)[v]`.
pub fn covariant_derivative(m: &LevelSetManifold, x: &dyn VectorField, p: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    require_tangent(m, p, &[x])?;
    m.check_tangent(p, v)?;
    Ok(m.tangent_part(p, &derivative(x, p, v)))
}

/// `(L_X g)(v, w) = ⟨∇_v X, w⟩ + ⟨∇_w X, v⟩`.
pub fn killing_residual(m: &LevelSetManifold, x: &dyn VectorField, p: &[f64], v: &[f64], w: &[f64]) -> Result<f64> {
    let dv = covariant_derivative(m, x, p, v)?;
    m.check_tangent(p, w)?;
    let dw = m.tangent_part(p, &derivative(x, p, w));
    Ok(linalg::dot(&dv, w) + linalg::dot(&dw, v))
}

fn applied(j: &EndoRef, x: &FieldRef) -> EndoApplied {
    EndoApplied {
        endo: j.clone(),
        field: x.clone(),
    }
}

/// `(L_ξ J)X = [ξ, JX] − J[ξ, X]`.
pub fn lie_derivative_endo(
    m: &LevelSetManifold,
    xi: &FieldRef,
    j: &EndoRef,
    x: &FieldRef,
    p: &[f64],
) -> Result<Vec<f64>> {
    require_tangent(m, p, &[&**xi, &**x])?;
    let jx = applied(j, x);
    let a = bracket_raw(&**xi, &jx, p);
    let b = j.apply_f64(p, &bracket_raw(&**xi, &**x, p));
    Ok(linalg::sub(&a, &b))
}

/// `N(A,B) = [A,B] + J[JA,B] + J[A,JB] − [JA,JB]`.
pub fn nijenhuis_tensor(m: &LevelSetManifold, j: &EndoRef, a: &FieldRef, b: &FieldRef, p: &[f64]) -> Result<Vec<f64>> {
    require_tangent(m, p, &[&**a, &**b])?;
    let ja = applied(j, a);
    let jb = applied(j, b);
    let mut inner = bracket_raw(&ja, &**b, p);
    let t = bracket_raw(&**a, &jb, p);
    linalg::axpy(1.0, &t, &mut inner);
    let mut out = bracket_raw(&**a, &**b, p);
    linalg::axpy(1.0, &j.apply_f64(p, &inner), &mut out);
    linalg::axpy(-1.0, &bracket_raw(&ja, &jb, p), &mut out);
    Ok(out)
}

/// Nijenhuis torsion of an endomorphism field,
/// `φ²[X,Y] + [φX,φY] − φ[φX,Y] − φ[X,φY]`.
pub fn phi_torsion(m: &LevelSetManifold, phi: &EndoRef, x: &FieldRef, y: &FieldRef, p: &[f64]) -> Result<Vec<f64>> {
    require_tangent(m, p, &[&**x, &**y])?;
    let px = applied(phi, x);
    let py = applied(phi, y);
    let br = bracket_raw(&**x, &**y, p);
    let mut out = phi.apply_f64(p, &phi.apply_f64(p, &br));
    linalg::axpy(1.0, &bracket_raw(&px, &py, p), &mut out);
    let mut mixed = bracket_raw(&px, &**y, p);
    linalg::axpy(1.0, &bracket_raw(&**x, &py, p), &mut mixed);
    linalg::axpy(-1.0, &phi.apply_f64(p, &mixed), &mut out);
    Ok(out)
}
