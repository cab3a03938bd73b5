//! Student-t and standard normal distribution functions.
//!
//! Tail probabilities go through the regularized incomplete beta function so
//! that quantiles far in the tail (alpha around 1e-4) keep full relative accuracy.

use crate::error::{GxeError, Result};
use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // reflection keeps the series in its accurate range
        let pi = T::lit(std::f64::consts::PI);
        return (pi / (pi * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(*c) / (x + T::from_count(i));
    }
    let t = x + T::lit(LANCZOS_G) + half;
    T::lit(0.5 * (2.0 * std::f64::consts::PI).ln()) + (x + half) * t.ln() - t + acc.ln()
}

/// Regularized incomplete beta `I_x(a, b)`, with `y = 1 − x` supplied by the caller
/// so that `x` near 1 does not lose precision.
pub fn inc_beta<T: Real>(a: T, b: T, x: T, y: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    if y <= T::zero() {
        return T::one();
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * y.ln();
    let front = ln_front.exp();
    if x < (a + T::one()) / (a + b + T::lit(2.0)) {
        front * beta_cf(a, b, x) / a
    } else {
        T::one() - front * beta_cf(b, a, y) / b
    }
}

/// Continued fraction for the incomplete beta (modified Lentz).
fn beta_cf<T: Real>(a: T, b: T, x: T) -> T {
    let tiny = T::min_positive_value() / T::epsilon();
    let eps = T::epsilon();
    let one = T::one();
    let two = T::lit(2.0);
    let qab = a + b;
    let qap = a + one;
    let qam = a - one;
    let mut c = one;
    let mut d = one - qab * x / qap;
    if d.abs() < tiny {
        d = tiny;
    }
    d = one / d;
    let mut h = d;
    for m in 1..20_000usize {
        let m = T::from_count(m);
        let m2 = two * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = one + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = one + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = one / d;
        h = h * d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = one + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = one + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = one / d;
        let del = d * c;
        h = h * del;
        if (del - one).abs() <= eps {
            break;
        }
    }
    h
}

/// Upper tail `P(T > t)` of Student's t with `df` degrees of freedom.
pub fn student_t_sf<T: Real>(t: T, df: T) -> T {
    let half = T::lit(0.5);
    let t2 = t * t;
    let x = df / (df + t2);
    let y = t2 / (df + t2);
    let tail = half * inc_beta(df * half, half, x, y);
    if t >= T::zero() {
        tail
    } else {
        T::one() - tail
    }
}

/// `P(T ≤ t)`.
pub fn student_t_cdf<T: Real>(t: T, df: T) -> T {
    student_t_sf(-t, df)
}

/// Density of Student's t.
pub fn student_t_pdf<T: Real>(t: T, df: T) -> T {
    let half = T::lit(0.5);
    let ln_norm =
        ln_gamma((df + T::one()) * half) - ln_gamma(df * half) - half * (df * T::lit(std::f64::consts::PI)).ln();
    (ln_norm - (df + T::one()) * half * (t * t / df).ln_1p()).exp()
}

/// Standard normal quantile (Wichura's AS 241, about 16 significant digits).
pub fn normal_quantile<T: Real>(p: T) -> Result<T> {
    if !(p > T::zero() && p < T::one()) {
        return Err(GxeError::Domain(format!("probability must lie in (0, 1), got {p}")));
    }
    let p = p.to_f64_lossy();
    let q = p - 0.5;
    let poly = |coef: &[f64], r: f64| coef.iter().rev().fold(0.0, |acc, c| acc * r + c);
    let value = if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        let num = [
            3.387_132_872_796_366_608,
            133.141_667_891_784_377_45,
            1_971.590_950_306_551_442_7,
            13_731.693_765_509_461_125,
            45_921.953_931_549_871_457,
            67_265.770_927_008_700_853,
            33_430.575_583_588_128_105,
            2_509.080_928_730_122_672_7,
        ];
        let den = [
            1.0,
            42.313_330_701_600_911_252,
            687.187_007_492_057_908_3,
            5_394.196_021_424_751_107_7,
            21_213.794_301_586_595_867,
            39_307.895_800_092_710_61,
            28_729.085_735_721_942_674,
            5_226.495_278_852_545_925,
        ];
        q * poly(&num, r) / poly(&den, r)
    } else {
        let mut r = if q < 0.0 { p } else { 1.0 - p };
        r = (-r.ln()).sqrt();
        let v = if r <= 5.0 {
            r -= 1.6;
            let num = [
                1.423_437_110_749_683_577_34,
                4.630_337_846_156_545_295_9,
                5.769_497_221_460_691_405_5,
                3.647_848_324_763_204_605_04,
                1.270_458_252_452_368_382_58,
                0.241_780_725_177_450_611_77,
                0.022_723_844_989_269_184_583_3,
                7.745_450_142_783_414_076_4e-4,
            ];
            let den = [
                1.0,
                2.053_191_626_637_758_821_87,
                1.676_384_830_183_803_849_4,
                0.689_767_334_985_100_004_55,
                0.148_103_976_427_480_074_59,
                0.015_198_666_563_616_457_196_6,
                5.475_938_084_995_344_946e-4,
                1.050_750_071_644_416_843_24e-9,
            ];
            poly(&num, r) / poly(&den, r)
        } else {
            r -= 5.0;
            let num = [
                6.657_904_643_501_103_777_2,
                5.463_784_911_164_114_369_9,
                1.784_826_539_917_291_335_8,
                0.296_560_571_828_504_891_23,
                0.026_532_189_526_576_123_093,
                0.001_242_660_947_388_078_438_6,
                2.711_555_568_743_487_578_15e-5,
                2.010_334_399_292_288_132_65e-7,
            ];
            let den = [
                1.0,
                0.599_832_206_555_887_937_69,
                0.136_929_880_922_735_805_31,
                0.014_875_361_290_850_614_852_5,
                7.868_691_311_456_132_591e-4,
                1.846_318_317_510_054_681_8e-5,
                1.421_511_758_316_445_888_7e-7,
                2.044_263_103_389_939_785_64e-15,
            ];
            poly(&num, r) / poly(&den, r)
        };
        if q < 0.0 {
            -v
        } else {
            v
        }
    };
    Ok(T::lit(value))
}

/// Degrees of freedom above which the Cornish-Fisher expansion is used as-is.
const LARGE_DF: f64 = 1e5;

/// Quantile of Student's t: the `t` with `P(T ≤ t) = probability`.
pub fn student_t_quantile<T: Real>(probability: T, df: usize) -> Result<T> {
    if !(probability > T::zero() && probability < T::one()) {
        return Err(GxeError::Domain(format!("probability must lie in (0, 1), got {probability}")));
    }
    if df == 0 {
        return Err(GxeError::Domain("degrees of freedom must be at least 1".into()));
    }
    let half = T::lit(0.5);
    if probability == half {
        return Ok(T::zero());
    }
    // work with the smaller tail and restore the sign at the end
    let (tail, sign) = if probability > half { (T::one() - probability, T::one()) } else { (probability, -T::one()) };
    Ok(sign * upper_tail_quantile(tail, df))
}

/// `t ≥ 0` with `P(T > t) = tail`, for `0 < tail < 1/2`.
fn upper_tail_quantile<T: Real>(tail: T, df: usize) -> T {
    let pi = T::lit(std::f64::consts::PI);
    let half = T::lit(0.5);
    match df {
        1 => return (pi * (half - tail)).tan(),
        2 => {
            let p = T::one() - tail;
            return (T::lit(2.0) * p - T::one()) * (T::lit(2.0) / (T::lit(4.0) * p * tail)).sqrt();
        }
        _ => {}
    }
    let nu = T::from_count(df);
    let z = -normal_quantile(tail).expect("tail in (0, 1/2)");
    let guess = cornish_fisher(z, nu);
    if df as f64 >= LARGE_DF {
        return guess;
    }

    // bracket the root, then safeguarded Newton
    let mut lo = T::zero();
    let mut hi = guess.max(T::one());
    while student_t_sf(hi, nu) > tail {
        lo = hi;
        hi = hi * T::lit(2.0);
    }
    let mut t = if guess > lo && guess < hi { guess } else { half * (lo + hi) };
    for _ in 0..200 {
        let f = student_t_sf(t, nu) - tail;
        if f > T::zero() {
            lo = t;
        } else {
            hi = t;
        }
        let pdf = student_t_pdf(t, nu);
        let mut next = t + f / pdf;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = half * (lo + hi);
        }
        let step = (next - t).abs();
        t = next;
        if step <= T::epsilon() * T::lit(4.0) * t.max(T::one()) || hi - lo <= T::epsilon() * hi {
            break;
        }
    }
    t
}

/// Cornish-Fisher expansion of the t quantile around the normal quantile `z`.
fn cornish_fisher<T: Real>(z: T, nu: T) -> T {
    let z2 = z * z;
    let z3 = z2 * z;
    let z5 = z3 * z2;
    let z7 = z5 * z2;
    let z9 = z7 * z2;
    let g1 = (z3 + z) / T::lit(4.0);
    let g2 = (T::lit(5.0) * z5 + T::lit(16.0) * z3 + T::lit(3.0) * z) / T::lit(96.0);
    let g3 = (T::lit(3.0) * z7 + T::lit(19.0) * z5 + T::lit(17.0) * z3 - T::lit(15.0) * z) / T::lit(384.0);
    let g4 = (T::lit(79.0) * z9 + T::lit(776.0) * z7 + T::lit(1482.0) * z5 - T::lit(1920.0) * z3 - T::lit(945.0) * z)
        / T::lit(92160.0);
    z + g1 / nu + g2 / (nu * nu) + g3 / (nu * nu * nu) + g4 / (nu * nu * nu * nu)
}
