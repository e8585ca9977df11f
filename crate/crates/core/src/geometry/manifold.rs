use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::dual::{Dual, Real, D1, D2};
use super::linalg::{self, cholesky, cholesky_solve, Mat};
use super::Scalar;
use crate::error::{Error, Result};

/// A constraint map `F: ℝᴺ → ℝᵏ` with dual-number evaluation.
pub trait ConstraintMap: Send + Sync {
    fn ambient_dim(&self) -> usize;
    fn num_equations(&self) -> usize;
    fn eval_f64(&self, x: &[f64]) -> Vec<f64>;
    fn eval_d1(&self, x: &[D1]) -> Vec<D1>;
    fn eval_d2(&self, x: &[D2]) -> Vec<D2>;
}

/// A constraint written once over any [`Real`].
pub trait PolynomialMap: Send + Sync {
    fn ambient_dim(&self) -> usize;
    fn num_equations(&self) -> usize;
    fn residual<T: Real>(&self, x: &[T]) -> Vec<T>;
}

impl<P: PolynomialMap> ConstraintMap for P {
    fn ambient_dim(&self) -> usize {
        PolynomialMap::ambient_dim(self)
    }
    fn num_equations(&self) -> usize {
        PolynomialMap::num_equations(self)
    }
    fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        self.residual(x)
    }
    fn eval_d1(&self, x: &[D1]) -> Vec<D1> {
        self.residual(x)
    }
    fn eval_d2(&self, x: &[D2]) -> Vec<D2> {
        self.residual(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Accepted `‖F(x)‖∞` for a point.
    pub feasibility: f64,
    /// Agreement required between two extension schemes.
    pub tensoriality: f64,
    /// Normal component allowed for a vector declared tangent.
    pub tangency: f64,
    pub newton_max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            feasibility: 1e-10,
            tensoriality: 1e-8,
            tangency: 1e-10,
            newton_max_iter: 50,
        }
    }
}

/// How random starting points for Newton projection are drawn.
#[derive(Clone, Debug, PartialEq)]
pub enum Seeder {
    /// Standard Gaussian in the ambient space, rescaled to unit norm.
    Gaussian,
    /// `frames` orthonormal vectors in `ℝ^dim` (Gram–Schmidt of Gaussians),
    /// followed by `extra` Gaussian coordinates.
    OrthonormalFrames { frames: usize, dim: usize, extra: usize },
}

/// A point of a level-set manifold, in ambient coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords }
    }
}

impl std::ops::Deref for Point {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.coords
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub points: Vec<Point>,
    /// Newton failures that were redrawn.
    pub rejected: usize,
}

/// Per-point random stream: the same `(seed, index)` always yields the same
/// draws, however the indices are distributed over workers.
pub fn point_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_vec(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Orthogonal decomposition against the normal space of the constraint at a
/// point: the normal space is spanned by the rows of the Jacobian.
pub struct NormalSpace<T> {
    jac: Mat<T>,
    chol: Mat<T>,
}

impl<T: Real> NormalSpace<T> {
    /// Tangential part `v − Jᵀ(JJᵀ)⁻¹Jv`.
    pub fn tangent_part(&self, v: &[T]) -> Vec<T> {
        let c = cholesky_solve(&self.chol, &self.jac.matvec(v));
        let n = self.jac.tmatvec(&c);
        linalg::sub(v, &n)
    }

    pub fn jacobian(&self) -> &Mat<T> {
        &self.jac
    }
}

/// `|x|² − 1` on `ℝᴺ`.
#[derive(Clone, Copy, Debug)]
pub struct UnitSphere {
    pub ambient: usize,
}

impl PolynomialMap for UnitSphere {
    fn ambient_dim(&self) -> usize {
        self.ambient
    }
    fn num_equations(&self) -> usize {
        1
    }
    fn residual<T: Real>(&self, x: &[T]) -> Vec<T> {
        vec![linalg::dot(x, x) - T::one()]
    }
}

const GRAM_PIVOT_TOL: f64 = 1e-20;

/// `{x ∈ ℝᴺ : F(x) = 0}` with a declared dimension.
#[derive(Clone)]
pub struct LevelSetManifold {
    name: String,
    constraint: Arc<dyn ConstraintMap>,
    expected_dim: usize,
    seeder: Seeder,
    pub tol: Tolerances,
}

impl fmt::Debug for LevelSetManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LevelSetManifold")
            .field("name", &self.name)
            .field("ambient_dim", &self.ambient_dim())
            .field("expected_dim", &self.expected_dim)
            .finish()
    }
}

impl LevelSetManifold {
    pub fn new(name: impl Into<String>, constraint: Arc<dyn ConstraintMap>, expected_dim: usize) -> Self {
        LevelSetManifold {
            name: name.into(),
            constraint,
            expected_dim,
            seeder: Seeder::Gaussian,
            tol: Tolerances::default(),
        }
    }

    /// The unit sphere `S^{N−1} ⊂ ℝᴺ`.
    pub fn unit_sphere(ambient: usize) -> Self {
        LevelSetManifold::new(
            format!("S^{}", ambient - 1),
            Arc::new(UnitSphere { ambient }),
            ambient - 1,
        )
    }

    pub fn with_seeder(mut self, seeder: Seeder) -> Self {
        self.seeder = seeder;
        self
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_dim(&self) -> usize {
        self.constraint.ambient_dim()
    }

    pub fn expected_dim(&self) -> usize {
        self.expected_dim
    }

    pub fn constraint(&self) -> &dyn ConstraintMap {
        &*self.constraint
    }

    pub fn residual(&self, x: &[f64]) -> Vec<f64> {
        self.constraint.eval_f64(x)
    }

    pub fn residual_norm(&self, x: &[f64]) -> f64 {
        linalg::max_abs(&self.residual(x))
    }

    /// Constraint Jacobian at `x` by forward mode, one column per coordinate.
    pub fn jacobian<T: Scalar>(&self, x: &[T]) -> Mat<T> {
        let n = self.ambient_dim();
        let k = self.constraint.num_equations();
        let mut jac = Mat::zeros(k, n);
        let mut xd: Vec<Dual<T>> = x.iter().map(|&v| Dual::constant(v)).collect();
        for col in 0..n {
            xd[col].eps = T::one();
            let r = T::constraint_lifted(&*self.constraint, &xd);
            for (row, d) in r.iter().enumerate() {
                jac[(row, col)] = d.eps;
            }
            xd[col].eps = T::zero();
        }
        jac
    }

    pub fn normal_space<T: Scalar>(&self, x: &[T]) -> Option<NormalSpace<T>> {
        let jac = self.jacobian(x);
        let chol = cholesky(&jac.gram(), GRAM_PIVOT_TOL)?;
        Some(NormalSpace { jac, chol })
    }

    /// Tangential projection of `v` at `x`; NaN where the Jacobian is singular.
    pub fn tangent_part<T: Scalar>(&self, x: &[T], v: &[T]) -> Vec<T> {
        match self.normal_space(x) {
            Some(ns) => ns.tangent_part(v),
            None => vec![T::cst(f64::NAN); v.len()],
        }
    }

    /// Orthogonal projector onto `ker JF(p)` as a dense matrix.
    pub fn tangent_projector(&self, p: &[f64]) -> Result<Mat<f64>> {
        let ns = self.normal_space(p).ok_or_else(|| Error::RankDeficient {
            rank: linalg::numerical_rank(&self.jacobian(p), 1e-10),
            expected: self.ambient_dim() - self.expected_dim,
        })?;
        let n = self.ambient_dim();
        let mut proj = Mat::zeros(n, n);
        let mut e = vec![0.0; n];
        for c in 0..n {
            e[c] = 1.0;
            let col = ns.tangent_part(&e);
            for r in 0..n {
                proj[(r, c)] = col[r];
            }
            e[c] = 0.0;
        }
        let rank = n - linalg::numerical_rank(&ns.jac, 1e-10);
        if rank != self.expected_dim {
            return Err(Error::RankDeficient {
                rank: n - rank,
                expected: n - self.expected_dim,
            });
        }
        Ok(proj)
    }

    /// `N − rank JF(p)`, by singular values.
    pub fn corank(&self, p: &[f64]) -> usize {
        self.ambient_dim() - linalg::numerical_rank(&self.jacobian(p), 1e-10)
    }

    pub fn check_regular(&self, p: &[f64]) -> Result<()> {
        let corank = self.corank(p);
        if corank == self.expected_dim {
            Ok(())
        } else {
            Err(Error::RegularityFailure {
                corank,
                expected: self.expected_dim,
            })
        }
    }

    /// Distance from `v` to the tangent space at `p`.
    pub fn normal_residual(&self, p: &[f64], v: &[f64]) -> f64 {
        let t = self.tangent_part(p, v);
        linalg::norm_f64(&linalg::sub(v, &t))
    }

    pub fn check_tangent(&self, p: &[f64], v: &[f64]) -> Result<()> {
        let residual = self.normal_residual(p, v);
        if residual <= self.tol.tangency * linalg::norm_f64(v).max(1.0) {
            Ok(())
        } else {
            Err(Error::TangencyViolation { residual })
        }
    }

    /// Gauss–Newton projection onto `F = 0` with minimum-norm steps.
    ///
    /// Feasible inputs are returned unchanged.
    pub fn project(&self, x: &[f64]) -> Result<Point> {
        let mut x = x.to_vec();
        let mut rn = self.residual_norm(&x);
        if rn <= self.tol.feasibility {
            return Ok(Point::new(x));
        }
        for _ in 0..self.tol.newton_max_iter {
            if !rn.is_finite() {
                break;
            }
            let r = self.residual(&x);
            let Some(ns) = self.normal_space(&x) else {
                break;
            };
            let c = cholesky_solve(&ns.chol, &r);
            let dx = ns.jac.tmatvec(&c);
            let mut step = 1.0;
            let mut next = x.clone();
            let mut next_rn = f64::INFINITY;
            while step > 1e-6 {
                next = x.iter().zip(&dx).map(|(a, d)| a - step * d).collect();
                next_rn = self.residual_norm(&next);
                if next_rn < rn {
                    break;
                }
                step *= 0.5;
            }
            if !(next_rn < rn) {
                break;
            }
            x = next;
            rn = next_rn;
            if rn <= 1e-15 {
                break;
            }
        }
        if rn <= self.tol.feasibility {
            Ok(Point::new(x))
        } else {
            Err(Error::NoConvergence {
                iterations: self.tol.newton_max_iter,
                residual: rn,
            })
        }
    }

    fn draw_seed(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match &self.seeder {
            Seeder::Gaussian => linalg::normalized(&gaussian_vec(rng, self.ambient_dim())),
            Seeder::OrthonormalFrames { frames, dim, extra } => {
                let raw: Vec<Vec<f64>> = (0..*frames).map(|_| gaussian_vec(rng, *dim)).collect();
                let mut out: Vec<f64> = match linalg::gram_schmidt(&raw, 1e-8) {
                    Some(vs) => vs.concat(),
                    None => raw.concat(),
                };
                out.extend(gaussian_vec(rng, *extra));
                out
            }
        }
    }

    /// One feasible point drawn from the stream `(seed, index)`.
    ///
    /// Returns the point and the number of rejected draws.
    pub fn sample_one(&self, seed: u64, index: u64) -> Result<(Point, usize)> {
        const MAX_ATTEMPTS: usize = 100;
        let mut rng = point_rng(seed, index);
        for attempt in 0..MAX_ATTEMPTS {
            let x0 = self.draw_seed(&mut rng);
            if let Ok(p) = self.project(&x0) {
                return Ok((p, attempt));
            }
        }
        Err(Error::SamplingExhausted {
            accepted: 0,
            rejected: MAX_ATTEMPTS,
        })
    }

    /// `count` feasible points, deterministic in `seed`.
    pub fn sample(&self, count: usize, seed: u64) -> Result<SampleSet> {
        let mut points = Vec::with_capacity(count);
        let mut rejected = 0;
        for i in 0..count {
            match self.sample_one(seed, i as u64) {
                Ok((p, r)) => {
                    points.push(p);
                    rejected += r;
                }
                Err(Error::SamplingExhausted { rejected: r, .. }) => {
                    return Err(Error::SamplingExhausted {
                        accepted: points.len(),
                        rejected: rejected + r,
                    })
                }
                Err(e) => return Err(e),
            }
        }
        if count > 0 && rejected > 99 * count {
            return Err(Error::SamplingExhausted {
                accepted: count,
                rejected,
            });
        }
        Ok(SampleSet { points, rejected })
    }

    /// Unit tangent vector at `p` from a Gaussian draw.
    pub fn random_tangent(&self, p: &[f64], rng: &mut impl Rng) -> Vec<f64> {
        loop {
            let g = gaussian_vec(rng, self.ambient_dim());
            let t = self.tangent_part(p, &g);
            // A draw almost parallel to the normal space leaves only roundoff.
            if linalg::norm_f64(&t) > 1e-6 * linalg::norm_f64(&g) {
                return linalg::normalized(&t);
            }
        }
    }
}
