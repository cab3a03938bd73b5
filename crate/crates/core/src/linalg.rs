//! Dense Householder QR for tall least-squares systems.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::error::GxeError;
use crate::scalar::Real;

/// Householder QR factorization of an `n × k` matrix with `n ≥ k`.
///
/// Only the pieces needed for least squares are kept: the reflectors, and the
/// upper-triangular factor `R`.
#[derive(Debug, Clone)]
pub struct Qr<T> {
    reflectors: Vec<Array1<T>>,
    r: Array2<T>,
}

impl<T: Real> Qr<T> {
    /// Factorizes `a`, failing with [`GxeError::RankDeficient`] on the first column whose
    /// diagonal pivot is below `T::rank_tolerance()` relative to that column's norm.
    pub fn new(a: ArrayView2<'_, T>) -> Result<Self, GxeError> {
        let (n, k) = a.dim();
        if n < k {
            return Err(GxeError::Dimension(format!("QR needs at least as many rows as columns, got {n}x{k}")));
        }
        let col_norms: Vec<T> = (0..k).map(|j| norm(a.column(j))).collect();
        let mut work = a.to_owned();
        let mut reflectors = Vec::with_capacity(k);
        let tol = T::rank_tolerance();

        for j in 0..k {
            let x = work.slice(ndarray::s![j.., j]);
            let xnorm = norm(x);
            let alpha = if x[0] > T::zero() { -xnorm } else { xnorm };
            if alpha.abs() <= tol * col_norms[j] || col_norms[j] == T::zero() {
                return Err(GxeError::RankDeficient { column: j });
            }
            let mut v = x.to_owned();
            v[0] = v[0] - alpha;
            let vnorm2 = v.dot(&v);
            if vnorm2 > T::zero() {
                for c in j..k {
                    let mut col = work.slice_mut(ndarray::s![j.., c]);
                    let s = v.dot(&col) * T::lit(2.0) / vnorm2;
                    col.scaled_add(-s, &v);
                }
            }
            reflectors.push(if vnorm2 > T::zero() { v / vnorm2.sqrt() } else { v });
        }

        let r = work.slice(ndarray::s![..k, ..]).to_owned();
        Ok(Self { reflectors, r })
    }

    /// Number of columns of the factored matrix.
    pub fn ncols(&self) -> usize {
        self.r.ncols()
    }

    /// Applies `Qᵀ` to `b` in place.
    fn apply_qt(&self, b: &mut Array1<T>) {
        for (j, v) in self.reflectors.iter().enumerate() {
            let mut tail = b.slice_mut(ndarray::s![j..]);
            let s = v.dot(&tail) * T::lit(2.0);
            tail.scaled_add(-s, v);
        }
    }

    /// Least-squares solution of `A x ≈ b`.
    pub fn solve(&self, b: ArrayView1<'_, T>) -> Array1<T> {
        let mut qtb = b.to_owned();
        self.apply_qt(&mut qtb);
        let k = self.ncols();
        let mut x = Array1::zeros(k);
        for i in (0..k).rev() {
            let mut acc = qtb[i];
            for j in (i + 1)..k {
                acc = acc - self.r[[i, j]] * x[j];
            }
            x[i] = acc / self.r[[i, i]];
        }
        x
    }

    /// `(AᵀA)⁻¹ = R⁻¹ R⁻ᵀ`.
    pub fn gram_inverse(&self) -> Array2<T> {
        let k = self.ncols();
        let mut rinv = Array2::zeros((k, k));
        for i in 0..k {
            rinv[[i, i]] = T::one() / self.r[[i, i]];
            for j in (i + 1)..k {
                let mut acc = T::zero();
                for m in i..j {
                    acc = acc + rinv[[i, m]] * self.r[[m, j]];
                }
                rinv[[i, j]] = -acc / self.r[[j, j]];
            }
        }
        let mut out = rinv.dot(&rinv.t());
        // symmetrize away round-off
        for i in 0..k {
            for j in (i + 1)..k {
                let avg = (out[[i, j]] + out[[j, i]]) * T::lit(0.5);
                out[[i, j]] = avg;
                out[[j, i]] = avg;
            }
        }
        out
    }
}

pub(crate) fn norm<T: Real>(x: ArrayView1<'_, T>) -> T {
    let scale = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if scale == T::zero() {
        return T::zero();
    }
    let ss: T = x.iter().map(|v| (*v / scale) * (*v / scale)).sum();
    scale * ss.sqrt()
}
