//! Frame embeddings: orthonormal complex pairs and real 4-frames as points of
//! `ℍⁿ⁺¹`, and the octonionic frame completions.
//!
//! A complex vector `u ∈ ℂⁿ⁺¹` is a slice of `(re, im)` pairs. The quaternion
//! `z + j w` with `z, w ∈ ℂ` has coordinates `(Re z, Im z, Re w, −Im w)`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::algebra::{omul, triple_cross, Octonion, Quaternion, QuaternionVector};
use crate::error::{Error, Result};
use crate::geometry::linalg;

pub type Complex = (f64, f64);

pub const FRAME_TOL: f64 = 1e-10;

fn herm(u: &[Complex], v: &[Complex]) -> Complex {
    // ⟨u, v⟩ = Σ ū v
    u.iter().zip(v).fold((0.0, 0.0), |(re, im), (&(a, b), &(c, d))| {
        (re + a * c + b * d, im + a * d - b * c)
    })
}

/// `h = (u₁ + j·c(u₂))/√2` where `c` is complex conjugation unless
/// `skip_conjugation` is set. With conjugation `μ(h) = 0` for every
/// orthonormal pair.
pub fn complex_pair_to_quaternion(u1: &[Complex], u2: &[Complex], skip_conjugation: bool) -> Result<QuaternionVector> {
    if u1.len() != u2.len() || u1.is_empty() {
        return Err(Error::NotAFrame("vectors must have equal, nonzero length".into()));
    }
    let n11 = herm(u1, u1).0;
    let n22 = herm(u2, u2).0;
    let (cr, ci) = herm(u1, u2);
    let off = (n11 - 1.0).abs().max((n22 - 1.0).abs()).max(cr.hypot(ci));
    if off > FRAME_TOL {
        return Err(Error::NotAFrame(format!(
            "complex pair is not orthonormal (deviation {off:e})"
        )));
    }
    let entries = u1
        .iter()
        .zip(u2)
        .map(|(&(zr, zi), &(wr, wi))| {
            let wi = if skip_conjugation { wi } else { -wi };
            Quaternion::new(zr, zi, wr, -wi).scale(FRAC_1_SQRT_2)
        })
        .collect();
    Ok(QuaternionVector::new(entries))
}

/// Largest deviation of `⟨fₐ, f_b⟩` from `δ_ab`.
pub fn frame_deviation(frame: &[&[f64]]) -> f64 {
    let mut worst = 0.0f64;
    for (a, fa) in frame.iter().enumerate() {
        for (b, fb) in frame.iter().enumerate().skip(a) {
            let d = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((linalg::dot(fa, fb) - d).abs());
        }
    }
    worst
}

/// Real 4-frame `(f₁, f₂, f₃, f₄)` in `ℝⁿ⁺¹` as the complex pair
/// `u₁ = (f₁ + i f₂)/√2`, `u₂ = (f₃ + i f₄)/√2`. With conjugation each entry is
/// `(f₁ + i f₂ + j f₃ + k f₄)ₐ / 2` and `ν(h) = 0`.
pub fn real_frame_to_quaternion(frame: [&[f64]; 4], skip_conjugation: bool) -> Result<QuaternionVector> {
    let len = frame[0].len();
    if frame.iter().any(|f| f.len() != len) {
        return Err(Error::NotAFrame("frame vectors differ in length".into()));
    }
    let dev = frame_deviation(&frame);
    if dev > FRAME_TOL {
        return Err(Error::NotAFrame(format!(
            "real frame is not orthonormal (deviation {dev:e})"
        )));
    }
    let c = FRAC_1_SQRT_2;
    let u1: Vec<Complex> = (0..len).map(|a| (c * frame[0][a], c * frame[1][a])).collect();
    let u2: Vec<Complex> = (0..len).map(|a| (c * frame[2][a], c * frame[3][a])).collect();
    complex_pair_to_quaternion(&u1, &u2, skip_conjugation)
}

/// Inverse of [`real_frame_to_quaternion`] with conjugation: `fₘ = 2·(coefficient m of h)`.
pub fn quaternion_to_real_frame(h: &QuaternionVector) -> [Vec<f64>; 4] {
    [0, 1, 2, 3].map(|m| h.entries.iter().map(|q| 2.0 * q.to_array()[m]).collect())
}

/// Octonion product of two imaginary vectors of `ℝ⁷`, as an `ℝ⁷` vector
/// (the real part is `−⟨x, y⟩`, dropped).
pub fn imaginary_product(x: &[f64], y: &[f64]) -> Vec<f64> {
    omul(Octonion::from_imaginary(x), Octonion::from_imaginary(y))
        .imaginary()
        .to_vec()
}

/// `(e₁, e₂, e₄) ↦ (e₁, e₂, e₁e₂, e₄)`.
pub fn g2_complete(frame: [&[f64]; 3]) -> Result<[Vec<f64>; 4]> {
    let dev = frame_deviation(&frame);
    if dev > FRAME_TOL {
        return Err(Error::NotAFrame(format!(
            "3-frame is not orthonormal (deviation {dev:e})"
        )));
    }
    Ok([
        frame[0].to_vec(),
        frame[1].to_vec(),
        imaginary_product(frame[0], frame[1]),
        frame[2].to_vec(),
    ])
}

/// `(e₁, e₂, e₃, e₄) ↦ (e₁, e₂, e₄)`.
pub fn g2_forget(frame: &[Vec<f64>; 4]) -> [Vec<f64>; 3] {
    [frame[0].clone(), frame[1].clone(), frame[3].clone()]
}

/// Residual of "`span{a, b, ab}` is closed under the octonion product": for
/// each pair, the norm of the product's component orthogonal to the span.
pub fn associative_residual(a: &[f64], b: &[f64]) -> f64 {
    let c = imaginary_product(a, b);
    let span = [a.to_vec(), b.to_vec(), linalg::normalized(&c)];
    let mut worst = 0.0f64;
    for (x, y) in [(0, 1), (0, 2), (1, 2)] {
        let mut p = imaginary_product(&span[x], &span[y]);
        for s in &span {
            let coef = linalg::dot(&p, s);
            linalg::axpy(-coef, s, &mut p);
        }
        worst = worst.max(linalg::norm_f64(&p));
    }
    worst
}

/// `e₄ = s·X(e₁, e₂, e₃)` completes an orthonormal 3-frame in `ℝ⁸` to a Cayley frame.
pub fn cayley_complete(frame: [&[f64]; 3], sign: f64) -> Result<[Vec<f64>; 4]> {
    let dev = frame_deviation(&frame);
    if dev > FRAME_TOL {
        return Err(Error::NotAFrame(format!(
            "3-frame is not orthonormal (deviation {dev:e})"
        )));
    }
    let o = |v: &[f64]| Octonion::from_slice(v);
    let e4 = triple_cross(o(frame[0]), o(frame[1]), o(frame[2])).scale(sign);
    Ok([
        frame[0].to_vec(),
        frame[1].to_vec(),
        frame[2].to_vec(),
        e4.to_array().to_vec(),
    ])
}
