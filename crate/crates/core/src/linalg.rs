//! Small dense linear algebra: Gauss–Jordan inversion and LU determinants.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Real> Dense<S> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![S::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [S] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    /// `self * x`.
    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        (0..self.n).map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum()).collect()
    }

    /// `selfᵀ * x`.
    pub fn tr_mul_vec(&self, x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.n];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = *o + a * xi;
            }
        }
        out
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting; `None` when a
    /// pivot falls below `tol` times the largest entry.
    pub fn inverse(&self, tol: S) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = a.data.iter().fold(S::zero(), |m, &x| m.max(x.abs()));
        if scale.is_zero() {
            return None;
        }
        for col in 0..n {
            let (piv, pmax) = (col..n).map(|r| (r, a[(r, col)].abs())).fold((col, S::zero()), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
            if pmax <= tol * scale {
                return None;
            }
            if piv != col {
                for k in 0..n {
                    a.data.swap(piv * n + k, col * n + k);
                    inv.data.swap(piv * n + k, col * n + k);
                }
            }
            let d = S::one() / a[(col, col)];
            for k in 0..n {
                a[(col, k)] = a[(col, k)] * d;
                inv[(col, k)] = inv[(col, k)] * d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f.is_zero() {
                    continue;
                }
                for k in 0..n {
                    a[(r, k)] = a[(r, k)] - f * a[(col, k)];
                    inv[(r, k)] = inv[(r, k)] - f * inv[(col, k)];
                }
            }
        }
        Some(inv)
    }
}

impl<S> std::ops::Index<(usize, usize)> for Dense<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.n + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Dense<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.n + j]
    }
}

/// Determinant of a complex square matrix by LU with partial pivoting.
pub fn det_complex<S: Real>(mut m: Vec<Vec<Complex<S>>>) -> Complex<S> {
    let n = m.len();
    let mut det = Complex::<S>::one();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].norm().partial_cmp(&m[b][col].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        if m[piv][col].is_zero() {
            return Complex::zero();
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col];
        det = det * p;
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            let f = row[col] / p;
            for (x, &v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = *x - f * v;
            }
        }
    }
    det
}
