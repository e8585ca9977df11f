//! Constraint maps and constructors for the concrete manifolds.

use std::sync::Arc;

use super::convention::ConventionPoint;
use crate::algebra::{moment_mu_flat, moment_nu_flat, omul, triple_cross, Octonion, Quaternion};
use crate::error::{Error, Result};
use crate::geometry::linalg::{self, Mat};
use crate::geometry::{
    complex_structure_matrix, quaternion_left_matrix, quaternion_right_matrix, AffineField, EndoRef, FieldRef,
    LevelSetManifold, LinearEndo, PolynomialMap, Real, Seeder,
};
use crate::hopf::{HopfBundleInstance, RightAction};

/// `(|x|² − 1, |y|² − 1)` on `ℝᵃ × ℝᵇ`.
#[derive(Clone, Copy, Debug)]
pub struct ProductSpheres {
    pub a: usize,
    pub b: usize,
}

impl PolynomialMap for ProductSpheres {
    fn ambient_dim(&self) -> usize {
        self.a + self.b
    }
    fn num_equations(&self) -> usize {
        2
    }
    fn residual<T: Real>(&self, x: &[T]) -> Vec<T> {
        let (u, v) = x.split_at(self.a);
        vec![linalg::dot(u, u) - T::one(), linalg::dot(v, v) - T::one()]
    }
}

/// `{|h|² = 1, μ(h) = 0}` in `ℍⁿ⁺¹`: one norm equation and the three
/// imaginary components of `μ`.
#[derive(Clone, Copy, Debug)]
pub struct MuLevelSet {
    pub entries: usize,
}

impl PolynomialMap for MuLevelSet {
    fn ambient_dim(&self) -> usize {
        4 * self.entries
    }
    fn num_equations(&self) -> usize {
        4
    }
    fn residual<T: Real>(&self, x: &[T]) -> Vec<T> {
        let mu = moment_mu_flat(x);
        vec![linalg::dot(x, x) - T::one(), mu.x, mu.y, mu.z]
    }
}

/// `{|h|² = 1, ν(h) = 0}` in `ℍⁿ⁺¹`: one norm equation and nine imaginary components.
#[derive(Clone, Copy, Debug)]
pub struct NuLevelSet {
    pub entries: usize,
}

impl PolynomialMap for NuLevelSet {
    fn ambient_dim(&self) -> usize {
        4 * self.entries
    }
    fn num_equations(&self) -> usize {
        10
    }
    fn residual<T: Real>(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![linalg::dot(x, x) - T::one()];
        for q in moment_nu_flat(x) {
            out.extend([q.x, q.y, q.z]);
        }
        out
    }
}

fn gram_equations<T: Real>(vs: &[&[T]], out: &mut Vec<T>) {
    for a in 0..vs.len() {
        for b in a..vs.len() {
            let d = if a == b { T::one() } else { T::zero() };
            out.push(linalg::dot(vs[a], vs[b]) - d);
        }
    }
}

/// Orthonormal `(e₁, e₂, e₄)` in `ℝ⁷ = Im 𝕆` with `⟨e₄, e₁e₂⟩ = 0`.
#[derive(Clone, Copy, Debug)]
pub struct G2Frames;

impl PolynomialMap for G2Frames {
    fn ambient_dim(&self) -> usize {
        21
    }
    fn num_equations(&self) -> usize {
        7
    }
    fn residual<T: Real>(&self, x: &[T]) -> Vec<T> {
        let (e1, rest) = x.split_at(7);
        let (e2, e4) = rest.split_at(7);
        let mut out = Vec::with_capacity(7);
        gram_equations(&[e1, e2, e4], &mut out);
        let p = omul(Octonion::from_imaginary(e1), Octonion::from_imaginary(e2)).imaginary();
        out.push(linalg::dot(e4, &p));
        out
    }
}

/// `(e₁, e₂, e₃, e₄)` in `ℝ⁸ = 𝕆` with `e₁, e₂, e₃` orthonormal and
/// `e₄ = s·X(e₁, e₂, e₃)`.
///
/// Orthonormality of `e₄` is implied, so it is not imposed; imposing it would
/// make the constraint non-regular.
#[derive(Clone, Copy, Debug)]
pub struct CayleyFrames {
    pub sign: f64,
}

impl PolynomialMap for CayleyFrames {
    fn ambient_dim(&self) -> usize {
        32
    }
    fn num_equations(&self) -> usize {
        14
    }
    fn residual<T: Real>(&self, x: &[T]) -> Vec<T> {
        let e: Vec<&[T]> = x.chunks_exact(8).collect();
        let mut out = Vec::with_capacity(14);
        gram_equations(&e[..3], &mut out);
        let o = |v: &[T]| Octonion::from_slice(v);
        let c = triple_cross(o(e[0]), o(e[1]), o(e[2])).to_array();
        for (a, b) in e[3].iter().zip(c) {
            out.push(*a - b.scale(self.sign));
        }
        out
    }
}

/// Copies `block` into an `n × n` zero matrix at `(offset, offset)`.
pub fn embed_block(block: &Mat<f64>, offset: usize, n: usize) -> Mat<f64> {
    let mut m = Mat::zeros(n, n);
    for r in 0..block.rows {
        for c in 0..block.cols {
            m[(offset + r, offset + c)] = block[(r, c)];
        }
    }
    m
}

fn linear(a: Mat<f64>) -> FieldRef {
    Arc::new(AffineField::linear(a))
}

/// Vertical fields on a block of `entries` quaternion coordinates starting at `offset`.
fn vertical_fields(conv: &ConventionPoint, offset: usize, entries: usize, n: usize) -> [FieldRef; 3] {
    let units = Quaternion::units();
    [0, 1, 2].map(|i| {
        let block = if conv.left_verticals {
            quaternion_left_matrix(-units[i], entries)
        } else {
            quaternion_right_matrix(units[i], entries)
        };
        let sign = if conv.negate_xi3 && i == 2 { -1.0 } else { 1.0 };
        linear(embed_block(&block, offset, n).scale(sign))
    })
}

fn reeb_and_phi(conv: &ConventionPoint, i_block: &Mat<f64>, offset: usize, n: usize) -> (FieldRef, EndoRef) {
    let i = embed_block(i_block, offset, n);
    let reeb_sign = if conv.negate_reeb { 1.0 } else { -1.0 };
    let phi_sign = if conv.negate_phi { -1.0 } else { 1.0 };
    (
        linear(i.scale(reeb_sign)),
        Arc::new(LinearEndo { a: i.scale(phi_sign) }),
    )
}

fn stiefel_bundle(
    name: String,
    manifold: LevelSetManifold,
    entries: usize,
    conv: &ConventionPoint,
) -> HopfBundleInstance {
    let n = 4 * entries;
    let verticals = vertical_fields(conv, 0, entries, n);
    let (xistar, phihat) = reeb_and_phi(conv, &quaternion_left_matrix(Quaternion::i(), entries), 0, n);
    HopfBundleInstance::new(
        name,
        manifold,
        verticals,
        xistar,
        phihat,
        RightAction { offset: 0, entries },
    )
}

/// `V₂(ℂⁿ⁺¹) ≅ {h ∈ ℍⁿ⁺¹ : |h| = 1, μ(h) = 0}`, dimension `4n`.
pub fn stiefel_complex(n: usize, conv: &ConventionPoint) -> Result<(LevelSetManifold, HopfBundleInstance)> {
    if n < 1 {
        return Err(Error::InfeasibleForSmallN { n, min: 1 });
    }
    let entries = n + 1;
    let m = LevelSetManifold::new(format!("V2(C^{entries})"), Arc::new(MuLevelSet { entries }), 4 * n);
    let b = stiefel_bundle(format!("stiefel_complex n={n}"), m.clone(), entries, conv);
    Ok((m, b))
}

/// `Ṽ₄(ℝⁿ⁺¹) ≅ {h ∈ ℍⁿ⁺¹ : |h| = 1, ν(h) = 0}`, dimension `4n − 6`.
pub fn stiefel_real(n: usize, conv: &ConventionPoint) -> Result<(LevelSetManifold, HopfBundleInstance)> {
    if n < 3 {
        return Err(Error::InfeasibleForSmallN { n, min: 3 });
    }
    let entries = n + 1;
    let m = LevelSetManifold::new(format!("V4(R^{entries})"), Arc::new(NuLevelSet { entries }), 4 * n - 6);
    let b = stiefel_bundle(format!("stiefel_real n={n}"), m.clone(), entries, conv);
    Ok((m, b))
}

/// `S^m × S³` with verticals on the `S³` factor, `ξ*` the Reeb field of `S^m`
/// and `φ̂` its `φ`. The connection is flat.
pub fn product_instance(base_dim: usize, conv: &ConventionPoint) -> Result<(LevelSetManifold, HopfBundleInstance)> {
    if base_dim.is_multiple_of(2) {
        return Err(Error::BadDimension(format!(
            "product base must be an odd sphere, got S^{base_dim}"
        )));
    }
    let a = base_dim + 1;
    let n = a + 4;
    let m = LevelSetManifold::new(
        format!("S^{base_dim} x S^3"),
        Arc::new(ProductSpheres { a, b: 4 }),
        base_dim + 3,
    );
    let verticals = vertical_fields(conv, a, 1, n);
    let (xistar, phihat) = reeb_and_phi(conv, &complex_structure_matrix(a), 0, n);
    let b = HopfBundleInstance::new(
        format!("product S^{base_dim} x S^3"),
        m.clone(),
        verticals,
        xistar,
        phihat,
        RightAction { offset: a, entries: 1 },
    );
    Ok((m, b))
}

/// `G₂ ≅ {(e₁, e₂, e₄) orthonormal in ℝ⁷ : e₄ ⊥ e₁e₂}`, dimension 14.
pub fn g2_instance() -> LevelSetManifold {
    LevelSetManifold::new("G2 frames", Arc::new(G2Frames), 14).with_seeder(Seeder::OrthonormalFrames {
        frames: 3,
        dim: 7,
        extra: 0,
    })
}

/// `Spin(7)/Sp(1)` as Cayley 4-frames in `ℝ⁸`, dimension 18.
pub fn spin7_instance(sign: f64) -> LevelSetManifold {
    LevelSetManifold::new("Spin(7)/Sp(1) frames", Arc::new(CayleyFrames { sign }), 18).with_seeder(
        Seeder::OrthonormalFrames {
            frames: 4,
            dim: 8,
            extra: 0,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuaternionVector;

    #[test]
    fn one_j_point_is_feasible() {
        let (m, _) = stiefel_complex(1, &ConventionPoint::default()).unwrap();
        let s = 0.5f64.sqrt();
        let h = QuaternionVector::new(vec![
            Quaternion::new(s, 0.0, 0.0, 0.0),
            Quaternion::new(0.0, 0.0, s, 0.0),
        ]);
        assert!(m.residual_norm(&h.to_flat()) < 1e-15);
        assert_eq!(m.corank(&h.to_flat()), 4);
    }

    #[test]
    fn small_n_is_rejected() {
        assert!(matches!(
            stiefel_real(2, &ConventionPoint::default()),
            Err(Error::InfeasibleForSmallN { n: 2, min: 3 })
        ));
        assert!(matches!(
            product_instance(2, &ConventionPoint::default()),
            Err(Error::BadDimension(_))
        ));
    }

    #[test]
    fn quaternionic_frame_is_cayley_for_negative_sign() {
        let mut x = vec![0.0; 32];
        for i in 0..4 {
            x[8 * i + i] = 1.0;
        }
        assert!(spin7_instance(-1.0).residual_norm(&x) < 1e-15);
        assert!(spin7_instance(1.0).residual_norm(&x) > 1.0);
        for v in &mut x[24..32] {
            *v = -*v;
        }
        assert!(spin7_instance(1.0).residual_norm(&x) < 1e-15);
    }
}
