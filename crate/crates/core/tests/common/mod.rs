#![allow(dead_code)]

use gxe_core::stats::{mix_seed, sample_bernoulli, sample_beta, sample_gaussian};
use gxe_core::GxEDataset;
use ndarray::{Array1, Array2};

/// Solves `(XᵀX) β = Xᵀy` by Gaussian elimination with partial pivoting.
pub fn normal_equations(x: &Array2<f64>, y: &Array1<f64>) -> Array1<f64> {
    let xtx = x.t().dot(x);
    let xty = x.t().dot(y);
    solve_dense(xtx, xty)
}

pub fn solve_dense(mut a: Array2<f64>, mut b: Array1<f64>) -> Array1<f64> {
    let k = b.len();
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| a[[i, col]].abs().total_cmp(&a[[j, col]].abs())).unwrap();
        if pivot != col {
            for c in 0..k {
                a.swap([col, c], [pivot, c]);
            }
            b.swap(col, pivot);
        }
        for row in (col + 1)..k {
            let f = a[[row, col]] / a[[col, col]];
            for c in col..k {
                a[[row, c]] -= f * a[[col, c]];
            }
            b[row] -= f * b[col];
        }
    }
    let mut out = Array1::zeros(k);
    for i in (0..k).rev() {
        let mut acc = b[i];
        for j in (i + 1)..k {
            acc -= a[[i, j]] * out[j];
        }
        out[i] = acc / a[[i, i]];
    }
    out
}

/// One-gene, one-environment data: `y = b0 + be·e + bg·g + beg·e·g + N(0, sd)`.
pub fn single_dataset(n: usize, coefs: [f64; 4], sd: f64, seed: u64) -> GxEDataset<f64> {
    let g = sample_bernoulli::<f64>(0.3, n, mix_seed(seed, 1)).unwrap();
    let e = sample_beta::<f64>(2.0, 2.0, n, mix_seed(seed, 2)).unwrap();
    let noise = sample_gaussian::<f64>(sd, n, mix_seed(seed, 3)).unwrap();
    let [b0, be, bg, beg] = coefs;
    let y = Array1::from_shape_fn(n, |i| b0 + be * e[i] + bg * g[i] + beg * e[i] * g[i] + noise[i]);
    GxEDataset::new(y, g.insert_axis(ndarray::Axis(1)), e.insert_axis(ndarray::Axis(1)), None).unwrap()
}

/// Multi-gene data with known weights; gene columns are 0/1/2 allele counts.
pub fn latent_dataset(n: usize, coefs: [f64; 4], p: &[f64], q: &[f64], sd: f64, seed: u64) -> GxEDataset<f64> {
    let k = p.len();
    let s = q.len();
    let mut genes = Array2::zeros((n, k));
    for j in 0..k {
        let a = sample_bernoulli::<f64>(0.4, n, mix_seed(seed, 10 + j as u64)).unwrap();
        let b = sample_bernoulli::<f64>(0.4, n, mix_seed(seed, 50 + j as u64)).unwrap();
        genes.column_mut(j).assign(&(&a + &b));
    }
    let mut envs = Array2::zeros((n, s));
    for l in 0..s {
        envs.column_mut(l).assign(&sample_gaussian::<f64>(1.0, n, mix_seed(seed, 90 + l as u64)).unwrap());
    }
    let g = genes.dot(&Array1::from(p.to_vec()));
    let e = envs.dot(&Array1::from(q.to_vec()));
    let noise = sample_gaussian::<f64>(sd, n, mix_seed(seed, 7)).unwrap();
    let [b0, bg, be, beg] = coefs;
    let y = Array1::from_shape_fn(n, |i| b0 + bg * g[i] + be * e[i] + beg * g[i] * e[i] + noise[i]);
    GxEDataset::new(y, genes, envs, None).unwrap()
}

/// Plain OLS on `[1, e, g, e·g]` for single-column data, via the normal-equations oracle.
pub fn standard_ols(data: &GxEDataset<f64>) -> (Array1<f64>, f64) {
    let n = data.n_obs();
    let g = data.genes().column(0);
    let e = data.environments().column(0);
    let x = Array2::from_shape_fn((n, 4), |(i, j)| match j {
        0 => 1.0,
        1 => e[i],
        2 => g[i],
        _ => e[i] * g[i],
    });
    let y = data.outcome().to_owned();
    let beta = normal_equations(&x, &y);
    let rss: f64 = (&y - &x.dot(&beta)).iter().map(|r| r * r).sum();
    (beta, rss)
}

pub fn gaussian_ll(rss: f64, n: usize) -> f64 {
    let n = n as f64;
    -0.5 * n * ((2.0 * std::f64::consts::PI).ln() + (rss / n).ln() + 1.0)
}
