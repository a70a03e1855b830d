//! Small dense linear algebra, generic over the working precision: a
//! row-major matrix, a Householder least-squares solver and a Jacobi
//! eigenvalue routine for symmetric matrices.
//!
//! The problems here are tall-thin design matrices with at most a few dozen
//! columns, so simplicity and genericity win over blocked kernels.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::ops::{Index, IndexMut};

#[derive(Clone, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// A^T A, the Gram matrix of the columns.
    pub fn gram(&self) -> Matrix<S> {
        let mut g = Matrix::zeros(self.cols, self.cols);
        for j in 0..self.cols {
            for k in j..self.cols {
                let mut acc = S::zero();
                for i in 0..self.rows {
                    acc += self[(i, j)] * self[(i, k)];
                }
                g[(j, k)] = acc;
                g[(k, j)] = acc;
            }
        }
        g
    }

    pub fn frobenius_norm(&self) -> S {
        let mut acc = S::zero();
        for v in &self.data {
            acc += *v * *v;
        }
        acc.sqrt()
    }
}

impl<S: Scalar> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S: Scalar> IndexMut<(usize, usize)> for Matrix<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Minimum-residual solution of `a x = b` by Householder QR, without
/// forming the normal matrix.
///
/// Columns are eliminated left to right; a column whose remaining norm
/// falls at or below `1e-12 * ||a||_F` makes the problem rank deficient and
/// the error names that column (the polynomial degree, in this crate's
/// usage).
pub fn solve_least_squares<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<Vec<S>> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::ShapeMismatch {
            left: m,
            right: b.len(),
        });
    }
    if m < n {
        return Err(Error::RankDeficient { degree: m });
    }
    let mut w = a.clone();
    let mut rhs = b.to_vec();
    let tol = S::from_f64(1e-12) * a.frobenius_norm();
    let two = S::from_f64(2.0);

    for j in 0..n {
        let mut nrm2 = S::zero();
        for i in j..m {
            nrm2 += w[(i, j)] * w[(i, j)];
        }
        let nrm = nrm2.sqrt();
        if nrm <= tol {
            return Err(Error::RankDeficient { degree: j });
        }
        // Reflect so the column collapses onto alpha * e1; the sign choice
        // avoids cancellation in the pivot of the Householder vector.
        let alpha = if w[(j, j)] > S::zero() { -nrm } else { nrm };
        let vjj = w[(j, j)] - alpha;
        let mut vtv = vjj * vjj;
        for i in (j + 1)..m {
            vtv += w[(i, j)] * w[(i, j)];
        }
        // v is (vjj, w[j+1..m, j]); apply H = I - 2 v v^T / v^T v.
        for c in (j + 1)..n {
            let mut dot = vjj * w[(j, c)];
            for i in (j + 1)..m {
                dot += w[(i, j)] * w[(i, c)];
            }
            let f = two * dot / vtv;
            w[(j, c)] -= f * vjj;
            for i in (j + 1)..m {
                let adj = f * w[(i, j)];
                w[(i, c)] -= adj;
            }
        }
        let mut dot = vjj * rhs[j];
        for i in (j + 1)..m {
            dot += w[(i, j)] * rhs[i];
        }
        let f = two * dot / vtv;
        rhs[j] -= f * vjj;
        for i in (j + 1)..m {
            let adj = f * w[(i, j)];
            rhs[i] -= adj;
        }
        w[(j, j)] = alpha;
    }

    let mut x = vec![S::zero(); n];
    for j in (0..n).rev() {
        let mut acc = rhs[j];
        for c in (j + 1)..n {
            acc -= w[(j, c)] * x[c];
        }
        x[j] = acc / w[(j, j)];
    }
    Ok(x)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted in
/// descending order. Jacobi keeps high relative accuracy on the positive
/// definite Gram matrices this crate feeds it, which is what makes the
/// condition-number diagnostics trustworthy for ratios up to ~1/eps.
pub fn symmetric_eigenvalues<S: Scalar>(mat: &Matrix<S>) -> Vec<S> {
    assert_eq!(mat.rows(), mat.cols(), "matrix must be square");
    let n = mat.rows();
    if n == 1 {
        return vec![mat[(0, 0)]];
    }
    let mut a = mat.clone();
    let fro = a.frobenius_norm();
    let stop = S::epsilon() * fro;
    let one = S::one();
    let two = S::from_f64(2.0);

    for _sweep in 0..64 {
        let mut off = S::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= stop {
            break;
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                // An entry that no longer perturbs either diagonal value is
                // converged; rotating on it would overflow theta^2.
                let negligible = S::from_f64(100.0) * apq.abs();
                if apq == S::zero()
                    || (a[(p, p)].abs() + negligible == a[(p, p)].abs()
                        && a[(q, q)].abs() + negligible == a[(q, q)].abs())
                {
                    a[(p, q)] = S::zero();
                    a[(q, p)] = S::zero();
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (two * apq);
                let t = {
                    // For very large |theta| the exact formula squares it
                    // past the exponent range; 1/(2 theta) agrees to far
                    // below working precision there.
                    let magnitude = if theta.abs() > S::from_f64(1e150) {
                        one / (two * theta.abs())
                    } else {
                        one / (theta.abs() + (theta * theta + one).sqrt())
                    };
                    if theta < S::zero() {
                        -magnitude
                    } else {
                        magnitude
                    }
                };
                let c = one / (t * t + one).sqrt();
                let s = t * c;
                let tau = s / (one + c);
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = S::zero();
                a[(q, p)] = S::zero();
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[(r, p)];
                    let arq = a[(r, q)];
                    a[(r, p)] = arp - s * (arq + tau * arp);
                    a[(p, r)] = a[(r, p)];
                    a[(r, q)] = arq + s * (arp - tau * arq);
                    a[(q, r)] = a[(r, q)];
                }
            }
        }
    }

    let mut eig: Vec<S> = (0..n).map(|i| a[(i, i)]).collect();
    eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eig
}
