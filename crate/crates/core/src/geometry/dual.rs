//! Forward-mode dual numbers.
//!
//! `Dual<T>` carries a primal value and one directional derivative. Nesting
//! (`Dual<Dual<f64>>`) yields mixed second derivatives, which the level-set
//! code needs to differentiate tangent projectors: the projector is built from
//! the constraint Jacobian, itself a first derivative.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Arithmetic needed by every polynomial map in the crate.
pub trait Real:
    Copy
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    fn cst(v: f64) -> Self;
    fn sqrt(self) -> Self;
    /// Primal value with every infinitesimal part dropped.
    fn re(self) -> f64;

    #[inline]
    fn zero() -> Self {
        Self::cst(0.0)
    }

    #[inline]
    fn one() -> Self {
        Self::cst(1.0)
    }

    #[inline]
    fn scale(self, s: f64) -> Self {
        self * Self::cst(s)
    }
}

impl Real for f64 {
    #[inline]
    fn cst(v: f64) -> Self {
        v
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

pub type D1 = Dual<f64>;
pub type D2 = Dual<Dual<f64>>;

impl<T: Real> Dual<T> {
    #[inline]
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }

    #[inline]
    pub fn constant(re: T) -> Self {
        Dual { re, eps: T::zero() }
    }
}

/// Seeds `x + ε·w` as a vector of duals.
pub fn seed<T: Real>(x: &[T], w: &[T]) -> Vec<Dual<T>> {
    x.iter().zip(w).map(|(&a, &b)| Dual::new(a, b)).collect()
}

pub fn primal<T: Real>(x: &[Dual<T>]) -> Vec<T> {
    x.iter().map(|d| d.re).collect()
}

pub fn tangent<T: Real>(x: &[Dual<T>]) -> Vec<T> {
    x.iter().map(|d| d.eps).collect()
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Dual::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Dual::new(q, (self.eps - q * o.eps) / o.re)
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<T: Real> AddAssign for Dual<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> SubAssign for Dual<T> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Real> Real for Dual<T> {
    #[inline]
    fn cst(v: f64) -> Self {
        Dual::constant(T::cst(v))
    }
    #[inline]
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual::new(s, self.eps / (s + s))
    }
    #[inline]
    fn re(self) -> f64 {
        self.re.re()
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        Dual::new(self.re.scale(s), self.eps.scale(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let x = Dual::new(3.0, 1.0);
        let y = x * x * x;
        assert_eq!(y.re, 27.0);
        assert_eq!(y.eps, 27.0);
    }

    #[test]
    fn quotient_and_sqrt() {
        let x = Dual::new(4.0, 1.0);
        let r = Dual::<f64>::cst(1.0) / x;
        assert!((r.eps + 1.0 / 16.0).abs() < 1e-15);
        let s = x.sqrt();
        assert_eq!(s.re, 2.0);
        assert!((s.eps - 0.25).abs() < 1e-15);
    }

    #[test]
    fn nested_duals_give_mixed_partials() {
        // f(x, y) = x^2 y, ∂²f/∂x∂y = 2x
        let x: D2 = Dual::new(Dual::new(1.5, 1.0), Dual::new(0.0, 0.0));
        let y: D2 = Dual::new(Dual::new(2.0, 0.0), Dual::new(1.0, 0.0));
        let f = x * x * y;
        assert_eq!(f.eps.eps, 3.0);
        assert_eq!(f.eps.re, 1.5 * 1.5);
        assert_eq!(f.re.eps, 2.0 * 1.5 * 2.0);
    }
}
