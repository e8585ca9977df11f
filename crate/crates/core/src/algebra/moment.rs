use super::quaternion::Quaternion;
use crate::geometry::Real;

/// A vector `h = (h₀, …, hₙ) ∈ ℍⁿ⁺¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionVector<T = f64> {
    pub entries: Vec<Quaternion<T>>,
}

impl<T: Real> QuaternionVector<T> {
    pub fn new(entries: Vec<Quaternion<T>>) -> Self {
        QuaternionVector { entries }
    }

    /// Reads `4(n+1)` reals as `n+1` quaternions.
    pub fn from_flat(x: &[T]) -> Self {
        assert_eq!(x.len() % 4, 0, "flat quaternion vector length must be a multiple of 4");
        QuaternionVector {
            entries: x.chunks_exact(4).map(Quaternion::from_slice).collect(),
        }
    }

    pub fn to_flat(&self) -> Vec<T> {
        self.entries.iter().flat_map(|q| q.to_array()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm_sqr(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, q| acc + q.norm_sqr())
    }

    /// `Re Σ ūₐ vₐ`
    pub fn inner(&self, other: &Self) -> T {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (a, b)| acc + a.dot(*b))
    }

    /// Entrywise `q·hₐ`.
    pub fn left_mul(&self, q: Quaternion<T>) -> Self {
        QuaternionVector {
            entries: self.entries.iter().map(|&h| q * h).collect(),
        }
    }

    /// Entrywise `hₐ·q`.
    pub fn right_mul(&self, q: Quaternion<T>) -> Self {
        QuaternionVector {
            entries: self.entries.iter().map(|&h| h * q).collect(),
        }
    }
}

/// `Σ h̄ₐ u hₐ` on a flattened vector.
#[inline]
fn sandwich_flat<T: Real>(x: &[T], u: Quaternion<T>) -> Quaternion<T> {
    x.chunks_exact(4).fold(Quaternion::zero(), |acc, c| {
        let h = Quaternion::from_slice(c);
        acc + h.conj() * u * h
    })
}

/// `μ(h) = Σ h̄ₐ i hₐ`, the moment map of the diagonal U(1) action.
pub fn moment_mu<T: Real>(h: &QuaternionVector<T>) -> Quaternion<T> {
    h.entries
        .iter()
        .fold(Quaternion::zero(), |acc, &q| acc + q.conj() * Quaternion::i() * q)
}

/// `ν(h) = (Σ h̄ₐ i hₐ, Σ h̄ₐ j hₐ, Σ h̄ₐ k hₐ)`, the moment map of the diagonal
/// Sp(1) action.
pub fn moment_nu<T: Real>(h: &QuaternionVector<T>) -> [Quaternion<T>; 3] {
    Quaternion::units().map(|u| {
        h.entries
            .iter()
            .fold(Quaternion::zero(), |acc, &q| acc + q.conj() * u * q)
    })
}

pub fn moment_mu_flat<T: Real>(x: &[T]) -> Quaternion<T> {
    sandwich_flat(x, Quaternion::i())
}

pub fn moment_nu_flat<T: Real>(x: &[T]) -> [Quaternion<T>; 3] {
    Quaternion::units().map(|u| sandwich_flat(x, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quaternion<f64>;

    fn qv(entries: Vec<Q>) -> QuaternionVector<f64> {
        QuaternionVector::new(entries)
    }

    #[test]
    fn mu_of_unit_coordinate() {
        let h = qv(vec![Q::one(), Q::zero(), Q::zero()]);
        assert_eq!(moment_mu(&h), Q::i());
    }

    #[test]
    fn mu_of_j_coordinate() {
        let h = qv(vec![Q::j(), Q::zero()]);
        assert_eq!(moment_mu(&h), -Q::i());
    }

    #[test]
    fn mu_vanishes_on_one_j_pair() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = qv(vec![Q::one().scale(s), Q::j().scale(s)]);
        assert!(moment_mu(&h).max_abs() < 1e-15);
    }

    #[test]
    fn nu_of_unit_coordinate() {
        let h = qv(vec![Q::one(), Q::zero()]);
        assert_eq!(moment_nu(&h), [Q::i(), Q::j(), Q::k()]);
    }

    #[test]
    fn flat_and_structured_agree() {
        let h = qv(vec![Q::new(0.3, -1.0, 0.2, 0.5), Q::new(1.1, 0.4, -0.7, 0.9)]);
        let flat = h.to_flat();
        assert_eq!(moment_mu(&h), moment_mu_flat(&flat));
        assert_eq!(moment_nu(&h), moment_nu_flat(&flat));
    }
}
