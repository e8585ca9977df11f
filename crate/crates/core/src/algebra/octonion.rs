//! Octonions by Cayley–Dickson doubling of the quaternions.
//!
//! An octonion is a pair `(a, b)` of quaternions read as `a + b·e₄`, with
//! product `(a, b)(c, d) = (ac − d̄b, da + bc̄)`. The basis is
//! `e₀ = 1, e₁ = i, e₂ = j, e₃ = k, e₄ = (0, 1), e₅ = (0, i), e₆ = (0, j),
//! e₇ = (0, k)`, which gives the table below (row · column):
//!
//! ```text
//!        e0   e1   e2   e3   e4   e5   e6   e7
//!  e0   +e0  +e1  +e2  +e3  +e4  +e5  +e6  +e7
//!  e1   +e1  -e0  +e3  -e2  +e5  -e4  -e7  +e6
//!  e2   +e2  -e3  -e0  +e1  +e6  +e7  -e4  -e5
//!  e3   +e3  +e2  -e1  -e0  +e7  -e6  +e5  -e4
//!  e4   +e4  -e5  -e6  -e7  -e0  +e1  +e2  +e3
//!  e5   +e5  +e4  -e7  +e6  -e1  -e0  -e3  +e2
//!  e6   +e6  +e7  +e4  -e5  -e2  +e3  -e0  -e1
//!  e7   +e7  -e6  +e5  +e4  -e3  -e2  +e1  -e0
//! ```
//!
//! The G₂ and Spin(7) predicates below depend on this table.

use std::ops::{Add, Mul, Neg, Sub};

use super::quaternion::Quaternion;
use crate::geometry::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Octonion<T = f64> {
    pub a: Quaternion<T>,
    pub b: Quaternion<T>,
}

impl<T: Real> Octonion<T> {
    pub fn new(a: Quaternion<T>, b: Quaternion<T>) -> Self {
        Octonion { a, b }
    }

    pub fn zero() -> Self {
        Octonion::new(Quaternion::zero(), Quaternion::zero())
    }

    pub fn one() -> Self {
        Octonion::new(Quaternion::one(), Quaternion::zero())
    }

    /// Basis element `eₙ`, `n < 8`.
    pub fn basis(n: usize) -> Self {
        let mut c = [T::zero(); 8];
        c[n] = T::one();
        Self::from_slice(&c)
    }

    pub fn from_slice(s: &[T]) -> Self {
        Octonion::new(Quaternion::from_slice(&s[0..4]), Quaternion::from_slice(&s[4..8]))
    }

    /// Embeds `ℝ⁷ ≅ Im 𝕆` with coordinates on `e₁ … e₇`.
    pub fn from_imaginary(s: &[T]) -> Self {
        let mut c = [T::zero(); 8];
        c[1..8].copy_from_slice(&s[0..7]);
        Self::from_slice(&c)
    }

    pub fn to_array(self) -> [T; 8] {
        let [a0, a1, a2, a3] = self.a.to_array();
        let [b0, b1, b2, b3] = self.b.to_array();
        [a0, a1, a2, a3, b0, b1, b2, b3]
    }

    pub fn imaginary(self) -> [T; 7] {
        let c = self.to_array();
        [c[1], c[2], c[3], c[4], c[5], c[6], c[7]]
    }

    pub fn conj(self) -> Self {
        Octonion::new(self.a.conj(), -self.b)
    }

    pub fn norm_sqr(self) -> T {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    pub fn norm(self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn dot(self, o: Self) -> T {
        self.a.dot(o.a) + self.b.dot(o.b)
    }

    pub fn scale(self, s: T) -> Self {
        Octonion::new(self.a.scale(s), self.b.scale(s))
    }
}

impl Octonion<f64> {
    pub fn max_abs(self) -> f64 {
        self.a.max_abs().max(self.b.max_abs())
    }
}

/// Cayley–Dickson product `(a, b)(c, d) = (ac − d̄b, da + bc̄)`.
#[inline]
pub fn omul<T: Real>(x: Octonion<T>, y: Octonion<T>) -> Octonion<T> {
    let (a, b, c, d) = (x.a, x.b, y.a, y.b);
    Octonion::new(a * c - d.conj() * b, d * a + b * c.conj())
}

/// Triple (double) cross product `½(x(ȳz) − z(ȳx))` on `ℝ⁸`.
pub fn triple_cross<T: Real>(x: Octonion<T>, y: Octonion<T>, z: Octonion<T>) -> Octonion<T> {
    let yb = y.conj();
    (omul(x, omul(yb, z)) - omul(z, omul(yb, x))).scale(T::cst(0.5))
}

/// `(xy)z − x(yz)`
pub fn associator<T: Real>(x: Octonion<T>, y: Octonion<T>, z: Octonion<T>) -> Octonion<T> {
    omul(omul(x, y), z) - omul(x, omul(y, z))
}

impl<T: Real> Mul for Octonion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        omul(self, o)
    }
}

impl<T: Real> Add for Octonion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Octonion::new(self.a + o.a, self.b + o.b)
    }
}

impl<T: Real> Sub for Octonion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Octonion::new(self.a - o.a, self.b - o.b)
    }
}

impl<T: Real> Neg for Octonion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Octonion::new(-self.a, -self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type O = Octonion<f64>;

    const TABLE: [[i8; 8]; 8] = [
        [1, 2, 3, 4, 5, 6, 7, 8],
        [2, -1, 4, -3, 6, -5, -8, 7],
        [3, -4, -1, 2, 7, 8, -5, -6],
        [4, 3, -2, -1, 8, -7, 6, -5],
        [5, -6, -7, -8, -1, 2, 3, 4],
        [6, 5, -8, 7, -2, -1, -4, 3],
        [7, 8, 5, -6, -3, 4, -1, -2],
        [8, -7, 6, 5, -4, -3, 2, -1],
    ];

    #[test]
    fn documented_table_matches_product() {
        for r in 0..8 {
            for c in 0..8 {
                let p = O::basis(r) * O::basis(c);
                let code = TABLE[r][c];
                let idx = (code.unsigned_abs() - 1) as usize;
                let expect = O::basis(idx).scale(code.signum() as f64);
                assert_eq!(p, expect, "e{r}·e{c}");
            }
        }
    }

    #[test]
    fn imaginary_units_anticommute() {
        let p = O::basis(1) * O::basis(2);
        assert_eq!(p, O::basis(3));
        assert_eq!(O::basis(2) * O::basis(1), -O::basis(3));
    }

    #[test]
    fn triple_cross_of_quaternion_units() {
        // Expanding with the table: ī·j = -i·j = -k; 1·(-k) = -k;
        // ī·1 = -i; j·(-i) = k; ½(-k - k) = -k.
        let t = triple_cross(O::one(), O::basis(1), O::basis(2));
        assert_eq!(t, -O::basis(3));
    }

    #[test]
    fn triple_cross_is_antisymmetric_in_outer_slots() {
        let x = O::from_slice(&[0.1, 0.4, -0.3, 0.2, 0.9, -0.5, 0.7, 0.6]);
        let y = O::from_slice(&[-0.2, 0.8, 0.1, -0.6, 0.3, 0.2, -0.4, 0.5]);
        let z = O::from_slice(&[0.5, -0.1, 0.9, 0.3, -0.7, 0.4, 0.2, -0.8]);
        let s = triple_cross(x, y, z) + triple_cross(z, y, x);
        assert!(s.max_abs() < 1e-15);
    }

    #[test]
    fn associator_of_e1_e2_e4() {
        let a = associator(O::basis(1), O::basis(2), O::basis(4));
        assert!(a.norm() > 0.5);
    }
}
