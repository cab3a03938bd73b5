//! Regions of significance: simple slopes, Johnson-Neyman bounds and the bound-based label.

use crate::classify::Label;
use crate::error::{GxeError, Result};
use crate::legit::LegitModel;
use crate::scalar::Real;
use crate::stats::student_t_quantile;

/// Residual degrees of freedom used for the critical value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DfConvention {
    /// `n` minus the number of main-model mean parameters.
    #[default]
    Residual,
    /// One fewer than [`DfConvention::Residual`].
    Reduced,
}

/// Where the genotype slopes differ significantly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignificanceRegion {
    /// Outside `[L, U]`; a missing bound extends the non-significant side to infinity.
    Outside,
    /// Only between `L` and `U`. Arises when the interaction is estimated less
    /// precisely than the critical value allows.
    Inside,
    Everywhere,
    Nowhere,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpleSlope<T> {
    pub slope: T,
    pub variance: T,
    pub t_stat: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoSResult<T> {
    pub lower_bound: Option<T>,
    pub upper_bound: Option<T>,
    pub region: SignificanceRegion,
    pub alpha: T,
    pub t_crit: T,
    pub degrees_of_freedom: usize,
    pub observable_range: (T, T),
    pub label: Label,
}

fn interaction_block<T: Real>(model: &LegitModel<T>) -> Result<(T, T, T, T, T)> {
    let (vg, veg, cov) = model.interaction_covariance().ok_or(GxeError::CrossoverParametrized)?;
    Ok((model.beta_g, model.beta_eg, vg, veg, cov))
}

/// Slope of the gene score at a given environmental score, with its variance and t statistic.
pub fn simple_slope<T: Real>(model: &LegitModel<T>, e_value: T) -> Result<SimpleSlope<T>> {
    let (bg, beg, vg, veg, cov) = interaction_block(model)?;
    let slope = bg + beg * e_value;
    let variance = vg + e_value * e_value * veg + T::lit(2.0) * e_value * cov;
    if !(variance > T::zero()) {
        return Err(GxeError::NonPositiveVariance(variance.to_f64_lossy()));
    }
    Ok(SimpleSlope { slope, variance, t_stat: slope / variance.sqrt() })
}

/// Residual degrees of freedom of the main model under a convention.
pub fn ros_df<T: Real>(model: &LegitModel<T>, convention: DfConvention) -> usize {
    let main = &model.diagnostics.main_step;
    let df = main.n_obs.saturating_sub(main.n_params);
    match convention {
        DfConvention::Residual => df,
        DfConvention::Reduced => df.saturating_sub(1),
    }
}

/// `.05` for one gene and one environment, `.0001` otherwise.
pub fn default_alpha<T: Real>(n_genes: usize, n_envs: usize) -> T {
    if n_genes == 1 && n_envs == 1 {
        T::lit(0.05)
    } else {
        T::lit(0.0001)
    }
}

/// Johnson-Neyman bounds: roots of `(β_g + β_eg e)² − t²·Var(slope(e)) = 0`.
pub fn ros_bounds<T: Real>(model: &LegitModel<T>, alpha: T, df: usize) -> Result<RoSResult<T>> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(GxeError::Domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let (bg, beg, vg, veg, cov) = interaction_block(model)?;
    if beg == T::zero() && veg <= T::zero() {
        return Err(GxeError::NoInteraction);
    }
    let t_crit = student_t_quantile(T::one() - alpha / T::lit(2.0), df)?;
    let t2 = t_crit * t_crit;
    // a e² + 2 h e + c0 = 0
    let a = beg * beg - t2 * veg;
    let h = bg * beg - t2 * cov;
    let c0 = bg * bg - t2 * vg;

    let scale = (beg * beg).max(t2 * veg);
    let (lower, upper, region) = if a.abs() <= T::epsilon() * scale * T::lit(16.0) {
        if h == T::zero() {
            (None, None, probe(model, t_crit)?)
        } else {
            let root = -c0 / (T::lit(2.0) * h);
            if h > T::zero() {
                (None, Some(root), SignificanceRegion::Outside)
            } else {
                (Some(root), None, SignificanceRegion::Outside)
            }
        }
    } else {
        let disc = h * h - a * c0;
        if disc <= T::zero() {
            (None, None, probe(model, t_crit)?)
        } else {
            let sq = disc.sqrt();
            let q = -(h + h.signum() * sq);
            let (r1, r2) = if q == T::zero() { (-sq / a, sq / a) } else { (q / a, c0 / q) };
            let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
            let region = if a > T::zero() { SignificanceRegion::Outside } else { SignificanceRegion::Inside };
            (Some(lo), Some(hi), region)
        }
    };
    let mut result = RoSResult {
        lower_bound: lower,
        upper_bound: upper,
        region,
        alpha,
        t_crit,
        degrees_of_freedom: df,
        observable_range: model.env_score_range,
        label: Label::NoEvidence,
    };
    result.label = classify_ros(&result, model.env_score_range);
    Ok(result)
}

fn probe<T: Real>(model: &LegitModel<T>, t_crit: T) -> Result<SignificanceRegion> {
    let s = simple_slope(model, T::zero())?;
    Ok(if s.t_stat.abs() >= t_crit { SignificanceRegion::Everywhere } else { SignificanceRegion::Nowhere })
}

/// Bounds at `alpha` (default from the model's dimensions) under a df convention.
pub fn ros_analysis<T: Real>(
    model: &LegitModel<T>,
    alpha: Option<T>,
    convention: DfConvention,
) -> Result<RoSResult<T>> {
    let alpha = alpha.unwrap_or_else(|| default_alpha(model.gene_weights.len(), model.env_weights.len()));
    ros_bounds(model, alpha, ros_df(model, convention))
}

/// Label from which bounds fall inside the closed observable range.
///
/// With significance outside `[L, U]`: both inside → differential susceptibility, only `L`
/// → diathesis-stress, only `U` → vantage sensitivity. When significance holds only between
/// the roots, the label follows the end of the range that is significant.
pub fn classify_ros<T: Real>(bounds: &RoSResult<T>, observable_range: (T, T)) -> Label {
    let (min, max) = observable_range;
    let inside = |b: Option<T>| b.is_some_and(|v| v >= min && v <= max);
    let (l_in, u_in) = (inside(bounds.lower_bound), inside(bounds.upper_bound));
    match bounds.region {
        SignificanceRegion::Outside => match (l_in, u_in) {
            (true, true) => Label::DifferentialSusceptibility,
            (true, false) => Label::DiathesisStress,
            (false, true) => Label::VantageSensitivity,
            (false, false) => Label::NoEvidence,
        },
        SignificanceRegion::Inside => match (l_in, u_in) {
            (true, false) => Label::VantageSensitivity,
            (false, true) => Label::DiathesisStress,
            _ => Label::NoEvidence,
        },
        SignificanceRegion::Everywhere | SignificanceRegion::Nowhere => Label::NoEvidence,
    }
}
