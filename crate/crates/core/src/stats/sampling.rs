//! Seeded samplers. A seed fully determines the output stream.

use ndarray::Array1;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Open01, StandardNormal};

use crate::error::{GxeError, Result};
use crate::scalar::Real;

/// The generator every seeded routine uses.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer; combines seeds into independent stream seeds.
pub fn mix_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_theta(theta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&theta) {
        Ok(())
    } else {
        Err(GxeError::Domain(format!("Bernoulli probability must lie in [0, 1], got {theta}")))
    }
}

fn check_shape(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(GxeError::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

pub fn bernoulli_variate<R: Rng + ?Sized>(rng: &mut R, theta: f64) -> f64 {
    if rng.random::<f64>() < theta {
        1.0
    } else {
        0.0
    }
}

/// Gamma(shape, 1) by Marsaglia and Tsang's squeeze-rejection method.
pub fn gamma_variate<R: Rng + ?Sized>(rng: &mut R, shape: f64) -> f64 {
    if shape < 1.0 {
        // boost: Gamma(a) = Gamma(a + 1) · U^(1/a)
        let u: f64 = rng.sample(Open01);
        return gamma_variate(rng, shape + 1.0) * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u: f64 = rng.sample(Open01);
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// Beta(a, b) as `X / (X + Y)` with independent Gamma(a), Gamma(b).
pub fn beta_variate<R: Rng + ?Sized>(rng: &mut R, a: f64, b: f64) -> f64 {
    let x = gamma_variate(rng, a);
    let y = gamma_variate(rng, b);
    x / (x + y)
}

pub fn sample_bernoulli<T: Real>(theta: f64, n: usize, seed: u64) -> Result<Array1<T>> {
    check_theta(theta)?;
    let mut rng = seeded_rng(seed);
    Ok((0..n).map(|_| T::lit(bernoulli_variate(&mut rng, theta))).collect())
}

pub fn sample_beta<T: Real>(alpha: f64, beta: f64, n: usize, seed: u64) -> Result<Array1<T>> {
    check_shape("alpha", alpha)?;
    check_shape("beta", beta)?;
    let mut rng = seeded_rng(seed);
    Ok((0..n).map(|_| T::lit(beta_variate(&mut rng, alpha, beta))).collect())
}

pub fn sample_gaussian<T: Real>(sd: f64, n: usize, seed: u64) -> Result<Array1<T>> {
    if !(sd >= 0.0 && sd.is_finite()) {
        return Err(GxeError::Domain(format!("standard deviation must be finite and ≥ 0, got {sd}")));
    }
    let mut rng = seeded_rng(seed);
    Ok((0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            T::lit(sd * z)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_bernoulli() {
        let zeros: Array1<f64> = sample_bernoulli(0.0, 500, 3).unwrap();
        assert!(zeros.iter().all(|v| *v == 0.0));
        let ones: Array1<f64> = sample_bernoulli(1.0, 500, 3).unwrap();
        assert!(ones.iter().all(|v| *v == 1.0));
    }

    #[test]
    fn reproducible_streams() {
        let a: Array1<f64> = sample_beta(2.0, 4.0, 100, 42).unwrap();
        let b: Array1<f64> = sample_beta(2.0, 4.0, 100, 42).unwrap();
        assert_eq!(a, b);
        let c: Array1<f64> = sample_beta(2.0, 4.0, 100, 43).unwrap();
        assert_ne!(a, c);
        let g1: Array1<f64> = sample_gaussian(1.5, 50, 9).unwrap();
        let g2: Array1<f64> = sample_gaussian(1.5, 50, 9).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn invalid_parameters() {
        assert!(sample_bernoulli::<f64>(1.2, 3, 0).is_err());
        assert!(sample_bernoulli::<f64>(f64::NAN, 3, 0).is_err());
        assert!(sample_beta::<f64>(0.0, 1.0, 3, 0).is_err());
        assert!(sample_beta::<f64>(1.0, -2.0, 3, 0).is_err());
        assert!(sample_gaussian::<f64>(-1.0, 3, 0).is_err());
    }

    #[test]
    fn zero_sd_gaussian_is_zero() {
        let z: Array1<f64> = sample_gaussian(0.0, 10, 1).unwrap();
        assert!(z.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn beta_support_is_open_unit_interval() {
        let x: Array1<f64> = sample_beta(0.5, 0.7, 5000, 11).unwrap();
        assert!(x.iter().all(|v| *v > 0.0 && *v < 1.0));
    }

    #[test]
    fn mix_seed_separates_streams() {
        assert_ne!(mix_seed(1, 0), mix_seed(1, 1));
        assert_ne!(mix_seed(1, 0), mix_seed(2, 0));
        assert_eq!(mix_seed(7, 3), mix_seed(7, 3));
    }
}
