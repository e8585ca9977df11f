//! Small dense linear algebra, generic over [`Real`] so it runs on dual numbers.

use super::dual::Real;

#[inline]
pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

#[inline]
pub fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// `y += s·x`
#[inline]
pub fn axpy<T: Real>(s: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += s * xi;
    }
}

pub fn sub<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn add<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn scaled<T: Real>(s: T, a: &[T]) -> Vec<T> {
    a.iter().map(|&x| s * x).collect()
}

pub fn lift<T: Real>(a: &[f64]) -> Vec<T> {
    a.iter().map(|&x| T::cst(x)).collect()
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn norm_f64(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalized(a: &[f64]) -> Vec<f64> {
    let n = norm_f64(a);
    a.iter().map(|x| x / n).collect()
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T = f64> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// `Aᵀ v`
    pub fn tmatvec(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.cols];
        for (r, &vr) in v.iter().enumerate().take(self.rows) {
            axpy(vr, self.row(r), &mut out);
        }
        out
    }

    pub fn matmul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows);
        Mat::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self[(r, k)] * other[(k, c)])
        })
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    /// `A Aᵀ`
    pub fn gram(&self) -> Mat<T> {
        Mat::from_fn(self.rows, self.rows, |r, c| dot(self.row(r), self.row(c)))
    }

    pub fn map<U: Real>(&self, f: impl Fn(T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Mat<T> {
        self.map(|x| x.scale(s))
    }
}

impl Mat<f64> {
    pub fn lift<T: Real>(&self) -> Mat<T> {
        self.map(T::cst)
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs_diff(&self, other: &Mat<f64>) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn add(&self, other: &Mat<f64>) -> Mat<f64> {
        Mat::from_fn(self.rows, self.cols, |r, c| self[(r, c)] + other[(r, c)])
    }

    pub fn block_diag(blocks: &[Mat<f64>]) -> Mat<f64> {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Cholesky factor of a symmetric positive definite matrix.
///
/// Returns `None` when a pivot falls below `rel_tol` times the largest diagonal
/// entry, which is how rank deficiency of a Gram matrix shows up.
pub fn cholesky<T: Real>(a: &Mat<T>, rel_tol: f64) -> Option<Mat<T>> {
    let n = a.rows;
    let scale = (0..n).fold(0.0f64, |m, i| m.max(a[(i, i)].re().abs()));
    let floor = rel_tol * scale.max(f64::MIN_POSITIVE);
    let mut l = Mat::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d.re() > floor) {
            return None;
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Some(l)
}

/// Solves `L Lᵀ x = b` given the Cholesky factor `L`.
pub fn cholesky_solve<T: Real>(l: &Mat<T>, b: &[T]) -> Vec<T> {
    let n = l.rows;
    let mut y = b.to_vec();
    for i in 0..n {
        let mut s = y[i];
        for k in 0..i {
            s -= l[(i, k)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= l[(k, i)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    y
}

/// Numerical rank from singular values, relative threshold `rel_tol`.
pub fn numerical_rank(a: &Mat<f64>, rel_tol: f64) -> usize {
    if a.rows == 0 || a.cols == 0 {
        return 0;
    }
    let sv = a.to_nalgebra().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > rel_tol * smax.max(1.0)).count()
}

/// Modified Gram–Schmidt on the given vectors; `None` if they are dependent.
pub fn gram_schmidt(vectors: &[Vec<f64>], tol: f64) -> Option<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            let c = dot(&w, u);
            axpy(-c, u, &mut w);
        }
        let n = norm_f64(&w);
        if n < tol {
            return None;
        }
        out.push(w.iter().map(|x| x / n).collect());
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_solves_spd_system() {
        let a = Mat::from_fn(3, 3, |r, c| if r == c { 4.0 } else { 1.0 });
        let l = cholesky(&a, 1e-14).unwrap();
        let x = cholesky_solve(&l, &[1.0, 2.0, 3.0]);
        let back = a.matvec(&x);
        assert!(max_abs(&sub(&back, &[1.0, 2.0, 3.0])) < 1e-14);
    }

    #[test]
    fn cholesky_rejects_singular() {
        let a = Mat::from_fn(2, 2, |_, _| 1.0);
        assert!(cholesky(&a, 1e-12).is_none());
    }

    #[test]
    fn rank_of_outer_product() {
        let a = Mat::from_fn(3, 3, |r, c| ((r + 1) * (c + 1)) as f64);
        assert_eq!(numerical_rank(&a, 1e-10), 1);
    }
}
