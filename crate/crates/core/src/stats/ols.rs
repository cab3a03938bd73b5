use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::error::{GxeError, Result};
use crate::linalg::Qr;
use crate::scalar::Real;

/// Result of an ordinary least-squares fit.
#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit<T> {
    pub coefficients: Array1<T>,
    /// `residual_variance · (XᵀX)⁻¹`
    pub coefficient_covariance: Array2<T>,
    /// Unbiased `RSS / (n − k)`.
    pub residual_variance: T,
    pub rss: T,
    pub r_squared: T,
    /// Gaussian log-likelihood at the maximum-likelihood variance `RSS / n`.
    pub log_likelihood: T,
    pub n_obs: usize,
    pub n_params: usize,
}

impl<T: Real> OlsFit<T> {
    pub fn std_error(&self, j: usize) -> T {
        self.coefficient_covariance[[j, j]].max(T::zero()).sqrt()
    }

    pub fn t_value(&self, j: usize) -> T {
        self.coefficients[j] / self.std_error(j)
    }

    pub fn df_resid(&self) -> usize {
        self.n_obs - self.n_params
    }
}

/// Fits `response ≈ design · β` by least squares.
///
/// `design` must be `n × k` with `n > k` and full column rank. A rank-deficient
/// design fails with the index of the first dependent column.
pub fn ols_fit<T: Real>(design: ArrayView2<'_, T>, response: ArrayView1<'_, T>) -> Result<OlsFit<T>> {
    let (n, k) = design.dim();
    if response.len() != n {
        return Err(GxeError::Dimension(format!("design has {n} rows but response has {} entries", response.len())));
    }
    if k == 0 {
        return Err(GxeError::Dimension("design has no columns".into()));
    }
    if n <= k {
        return Err(GxeError::Dimension(format!("need more observations than parameters, got n = {n}, k = {k}")));
    }
    let qr = Qr::new(design)?;
    let coefficients = qr.solve(response);
    let residuals = &response - &design.dot(&coefficients);
    let rss: T = residuals.iter().map(|r| *r * *r).sum();
    let residual_variance = rss / T::from_count(n - k);
    let coefficient_covariance = qr.gram_inverse() * residual_variance;
    let r_squared = r_squared_from_rss(response, rss);
    Ok(OlsFit {
        coefficients,
        coefficient_covariance,
        residual_variance,
        rss,
        r_squared,
        log_likelihood: gaussian_log_likelihood(rss, n),
        n_obs: n,
        n_params: k,
    })
}

/// `1 − RSS/TSS` against the centered total sum of squares; 0 when the response is constant.
pub fn r_squared_from_rss<T: Real>(response: ArrayView1<'_, T>, rss: T) -> T {
    let n = T::from_count(response.len());
    let mean = response.sum() / n;
    let tss: T = response.iter().map(|y| (*y - mean) * (*y - mean)).sum();
    if tss <= T::zero() {
        T::zero()
    } else {
        T::one() - rss / tss
    }
}

/// Gaussian log-likelihood with the variance profiled out at `RSS / n`.
pub fn gaussian_log_likelihood<T: Real>(rss: T, n: usize) -> T {
    let nf = T::from_count(n);
    let two_pi = T::lit(2.0 * std::f64::consts::PI);
    // A perfect fit has unbounded likelihood; keep it finite so comparisons still order.
    let sigma2 = (rss / nf).max(T::min_positive_value());
    -nf / T::lit(2.0) * (two_pi.ln() + sigma2.ln() + T::one())
}
