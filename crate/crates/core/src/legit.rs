//! Latent genetic × environmental score models fitted by alternating least squares.
//!
//! The genetic score is `g = Σ p_j g_j` and the environmental score `e = Σ q_l e_l`,
//! with `Σ|p| = Σ|q| = 1`. Each cycle refits the main regression on `(e, g)`, then the
//! gene weights with everything else held fixed, then the environment weights.
//!
//! Crossover forms replace `β_g g` by the crossover term:
//! `y = β₀ + β_e (e − c) + β_eg (e − c) g`. A free crossover is estimated as the
//! coefficient of an extra, unconstrained intercept in the environment step; a fixed
//! crossover is held at the given value on the normalized score scale.

use ndarray::{s, Array1, Array2, ArrayView1, Axis};

use crate::data::{value_range, GxEDataset};
use crate::error::{GxeError, Result};
use crate::scalar::Real;
use crate::stats::{information_criteria, ols_fit, student_t_quantile, OlsFit};

/// How the crossover point enters the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossover<T> {
    /// Standard parametrization with a genetic main effect `β_g`.
    Absent,
    /// Crossover held at a fixed environmental-score value.
    Fixed(T),
    /// Crossover estimated.
    Free,
}

/// Whether the environmental main effect is estimated (weak models) or fixed at zero (strong).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvEffect {
    Free,
    FixedZero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelForm<T> {
    pub crossover: Crossover<T>,
    pub beta_e: EnvEffect,
}

impl<T> ModelForm<T> {
    pub const fn standard() -> Self {
        Self { crossover: Crossover::Absent, beta_e: EnvEffect::Free }
    }
    pub const fn new(crossover: Crossover<T>, beta_e: EnvEffect) -> Self {
        Self { crossover, beta_e }
    }
}

/// Starting values for the weights and, for free-crossover fits, the crossover.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InitialValues<T> {
    pub gene_weights: Option<Array1<T>>,
    pub env_weights: Option<Array1<T>>,
    pub crossover: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions<T> {
    /// Stop once the main-model R² improves by less than this.
    pub tol: T,
    pub max_iter: usize,
    pub init: InitialValues<T>,
}

impl<T: Real> Default for FitOptions<T> {
    fn default() -> Self {
        Self { tol: T::lit(1e-8).max(T::epsilon() * T::lit(100.0)), max_iter: 100, init: InitialValues::default() }
    }
}

/// Fit summary from the final main-model regression at the converged weights.
#[derive(Debug, Clone, PartialEq)]
pub struct FitDiagnostics<T> {
    /// The main-step OLS (columns: intercept, `e − c` unless strong, `g` when no crossover,
    /// `(e − c)·g`, covariates).
    pub main_step: OlsFit<T>,
    pub r_squared: T,
    pub rss: T,
    pub log_likelihood: T,
    pub aic: T,
    pub bic: T,
    pub n_obs: usize,
}

/// A fitted latent-score interaction model.
#[derive(Debug, Clone, PartialEq)]
pub struct LegitModel<T> {
    pub beta0: T,
    pub beta_e: T,
    pub beta_g: T,
    pub beta_eg: T,
    pub covariate_coefficients: Array1<T>,
    pub gene_weights: Array1<T>,
    pub env_weights: Array1<T>,
    /// Present for fixed and free crossover forms.
    pub crossover: Option<T>,
    pub form: ModelForm<T>,
    pub diagnostics: FitDiagnostics<T>,
    pub n_free_params: usize,
    pub iterations_used: usize,
    pub converged: bool,
    /// Main-model R² after every main step.
    pub r2_trace: Vec<T>,
    /// Observed (min, max) of the environmental score at the final weights.
    pub env_score_range: (T, T),
    /// Standard error of a free crossover, conditional on the weights.
    pub crossover_se: Option<T>,
}

impl<T: Real> LegitModel<T> {
    pub fn beta_e_fixed_zero(&self) -> bool {
        self.form.beta_e == EnvEffect::FixedZero
    }

    /// `(Var β̂_g, Var β̂_eg, Cov(β̂_g, β̂_eg))` for standard-form fits.
    pub fn interaction_covariance(&self) -> Option<(T, T, T)> {
        let layout = MainLayout::new(&self.form, self.covariate_coefficients.len());
        let g = layout.g?;
        let cov = &self.diagnostics.main_step.coefficient_covariance;
        Some((cov[[g, g]], cov[[layout.eg, layout.eg]], cov[[g, layout.eg]]))
    }

    /// Number of rows the model was fitted on.
    pub fn n_obs(&self) -> usize {
        self.diagnostics.n_obs
    }

    /// Main-model coefficients with standard errors conditional on the fitted weights.
    pub fn main_coefficients(&self) -> Vec<Coefficient<T>> {
        let layout = MainLayout::new(&self.form, self.covariate_coefficients.len());
        let fit = &self.diagnostics.main_step;
        let term = |term, j: usize| Coefficient { term, estimate: fit.coefficients[j], std_error: fit.std_error(j) };
        let mut out = vec![term(Term::Intercept, 0)];
        if let Some(j) = layout.e {
            out.push(term(Term::Environment, j));
        }
        if let Some(j) = layout.g {
            out.push(term(Term::Gene, j));
        }
        out.push(term(Term::Interaction, layout.eg));
        for i in 0..self.covariate_coefficients.len() {
            out.push(term(Term::Covariate(i), layout.cov_start + i));
        }
        out
    }
}

/// Term of the main model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    Intercept,
    Environment,
    Gene,
    Interaction,
    /// Index into the dataset's covariate columns.
    Covariate(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficient<T> {
    pub term: Term,
    pub estimate: T,
    pub std_error: T,
}

/// Column positions in the main-step design.
#[derive(Debug, Clone, Copy)]
struct MainLayout {
    e: Option<usize>,
    g: Option<usize>,
    eg: usize,
    cov_start: usize,
    ncols: usize,
}

impl MainLayout {
    fn new<T>(form: &ModelForm<T>, n_cov: usize) -> Self {
        let mut next = 1;
        let e = (form.beta_e == EnvEffect::Free).then(|| {
            next += 1;
            next - 1
        });
        let g = matches!(form.crossover, Crossover::Absent).then(|| {
            next += 1;
            next - 1
        });
        let eg = next;
        let cov_start = eg + 1;
        Self { e, g, eg, cov_start, ncols: cov_start + n_cov }
    }
}

/// Free-parameter count used for information criteria.
pub fn count_free_params<T>(form: &ModelForm<T>, n_genes: usize, n_envs: usize, n_cov: usize) -> usize {
    let mut k = 2; // intercept and interaction
    if form.beta_e == EnvEffect::Free {
        k += 1;
    }
    match form.crossover {
        Crossover::Absent => k += 1,
        Crossover::Free => k += 1,
        Crossover::Fixed(_) => {}
    }
    k + (n_genes - 1) + (n_envs - 1) + n_cov
}

/// Current state of the alternating fit.
struct State<T> {
    p: Array1<T>,
    q: Array1<T>,
    c: T,
    beta0: T,
    beta_e: T,
    beta_g: T,
    beta_eg: T,
    gamma: Array1<T>,
}

struct Fitter<'a, T: Real> {
    data: &'a GxEDataset<T>,
    form: ModelForm<T>,
    layout: MainLayout,
}

impl<'a, T: Real> Fitter<'a, T> {
    fn covariate_part(&self, gamma: &Array1<T>) -> Array1<T> {
        match self.data.covariates() {
            Some(x) => x.dot(gamma),
            None => Array1::zeros(self.data.n_obs()),
        }
    }

    fn main_design(&self, e_shift: &Array1<T>, g: &Array1<T>) -> Array2<T> {
        let n = self.data.n_obs();
        let l = self.layout;
        let mut x = Array2::zeros((n, l.ncols));
        x.column_mut(0).fill(T::one());
        if let Some(j) = l.e {
            x.column_mut(j).assign(e_shift);
        }
        if let Some(j) = l.g {
            x.column_mut(j).assign(g);
        }
        x.column_mut(l.eg).assign(&(e_shift * g));
        if let Some(cov) = self.data.covariates() {
            x.slice_mut(s![.., l.cov_start..]).assign(cov);
        }
        x
    }

    fn main_step(&self, st: &mut State<T>) -> Result<OlsFit<T>> {
        let g = self.data.gene_score(st.p.view())?;
        let e_shift = self.data.env_score(st.q.view())? - st.c;
        let x = self.main_design(&e_shift, &g);
        let fit = ols_fit(x.view(), self.data.outcome())?;
        let b = &fit.coefficients;
        st.beta0 = b[0];
        st.beta_e = self.layout.e.map_or(T::zero(), |j| b[j]);
        st.beta_g = self.layout.g.map_or(T::zero(), |j| b[j]);
        st.beta_eg = b[self.layout.eg];
        st.gamma = b.slice(s![self.layout.cov_start..]).to_owned();
        Ok(fit)
    }

    fn gene_step(&self, st: &mut State<T>) -> Result<()> {
        let e_shift = self.data.env_score(st.q.view())? - st.c;
        let target = &self.data.outcome() - st.beta0 - &(&e_shift * st.beta_e) - self.covariate_part(&st.gamma);
        let slope = e_shift.mapv(|e| st.beta_g + st.beta_eg * e);
        let design = self.data.genes() * &slope.insert_axis(Axis(1));
        let raw = ols_fit(design.view(), target.view())?.coefficients;
        let scale: T = raw.iter().map(|v| v.abs()).sum();
        if !(scale > T::epsilon()) {
            return Ok(());
        }
        st.p = raw / scale;
        st.beta_g = st.beta_g * scale;
        st.beta_eg = st.beta_eg * scale;
        if leading_is_negative(st.p.view()) {
            st.p.mapv_inplace(|v| -v);
            st.beta_g = -st.beta_g;
            st.beta_eg = -st.beta_eg;
        }
        Ok(())
    }

    fn env_step(&self, st: &mut State<T>) -> Result<()> {
        let g = self.data.gene_score(st.p.view())?;
        let slope = g.mapv(|gi| st.beta_e + st.beta_eg * gi);
        let offset = &self.data.outcome() - st.beta0 - &(&g * st.beta_g) - self.covariate_part(&st.gamma);
        let weighted_env = self.data.environments() * &slope.view().insert_axis(Axis(1));
        match self.form.crossover {
            Crossover::Absent | Crossover::Free => {
                let free = matches!(self.form.crossover, Crossover::Free);
                let design = if free {
                    let mut d = Array2::zeros((weighted_env.nrows(), weighted_env.ncols() + 1));
                    d.slice_mut(s![.., ..weighted_env.ncols()]).assign(&weighted_env);
                    d.column_mut(weighted_env.ncols()).assign(&slope);
                    d
                } else {
                    weighted_env
                };
                let coef = ols_fit(design.view(), offset.view())?.coefficients;
                let raw = coef.slice(s![..self.data.n_envs()]).to_owned();
                let scale: T = raw.iter().map(|v| v.abs()).sum();
                if !(scale > T::epsilon()) {
                    return Ok(());
                }
                st.q = raw / scale;
                st.beta_e = st.beta_e * scale;
                st.beta_eg = st.beta_eg * scale;
                if free {
                    st.c = -coef[self.data.n_envs()] / scale;
                }
                if leading_is_negative(st.q.view()) {
                    st.q.mapv_inplace(|v| -v);
                    st.beta_e = -st.beta_e;
                    st.beta_eg = -st.beta_eg;
                    st.c = -st.c;
                }
                Ok(())
            }
            Crossover::Fixed(c) => {
                let target = &offset + &(&slope * c);
                st.q = constrained_weight_step(&weighted_env, &target, st.q.view())?;
                Ok(())
            }
        }
    }

    fn state_score_span(&self, st: &State<T>) -> Result<T> {
        let e = self.data.env_score(st.q.view())?;
        let (lo, hi) = value_range(e.view());
        Ok(hi - lo)
    }

    fn check_divergence(&self, st: &State<T>) -> Result<()> {
        let span = self.state_score_span(st)?;
        let guard = T::lit(100.0) * span;
        if !st.c.is_finite() || st.c.abs() > guard {
            return Err(GxeError::CrossoverDiverged {
                magnitude: st.c.abs().to_f64_lossy(),
                guard: guard.to_f64_lossy(),
            });
        }
        Ok(())
    }

    /// Standard error of a free crossover from the linearized model at the optimum,
    /// holding `p` and `q` at their converged values.
    fn crossover_se(&self, st: &State<T>, fit: &OlsFit<T>) -> Result<T> {
        let g = self.data.gene_score(st.p.view())?;
        let e_shift = self.data.env_score(st.q.view())? - st.c;
        let main = self.main_design(&e_shift, &g);
        let n = main.nrows();
        let mut jac = Array2::zeros((n, main.ncols() + 1));
        jac.slice_mut(s![.., ..main.ncols()]).assign(&main);
        // ∂ fitted / ∂c = −(β_e + β_eg g)
        jac.column_mut(main.ncols()).assign(&g.mapv(|gi| -(st.beta_e + st.beta_eg * gi)));
        let residuals = &self.data.outcome() - &main.dot(&fit.coefficients);
        let lin = ols_fit(jac.view(), residuals.view())?;
        Ok(lin.std_error(main.ncols()))
    }
}

/// Minimizes `‖target − A q‖²` over `q` on the face of `Σ|q| = 1` that contains `current`.
///
/// The step never leaves the face, so the objective cannot increase; a component that
/// would change sign stops at zero instead.
fn constrained_weight_step<T: Real>(
    a: &Array2<T>,
    target: &Array1<T>,
    current: ArrayView1<'_, T>,
) -> Result<Array1<T>> {
    let s_count = a.ncols();
    if s_count == 1 {
        return Ok(current.to_owned());
    }
    // orthant of the face: current signs, and for zero entries the unconstrained direction
    let unconstrained = ols_fit(a.view(), target.view())?.coefficients;
    let sign: Vec<T> = current
        .iter()
        .zip(unconstrained.iter())
        .map(|(q, u)| {
            let v = if *q != T::zero() { *q } else { *u };
            if v < T::zero() {
                -T::one()
            } else {
                T::one()
            }
        })
        .collect();
    let pivot = current.iter().enumerate().fold(0, |best, (i, v)| if v.abs() > current[best].abs() { i } else { best });

    // q_pivot = s_pivot (1 − Σ_{l≠pivot} s_l q_l)
    let pivot_col = a.column(pivot);
    let reduced_target = target - &(&pivot_col * sign[pivot]);
    let others: Vec<usize> = (0..s_count).filter(|&l| l != pivot).collect();
    let mut design = Array2::zeros((a.nrows(), others.len()));
    for (j, &l) in others.iter().enumerate() {
        let col = &a.column(l) - &(&pivot_col * (sign[pivot] * sign[l]));
        design.column_mut(j).assign(&col);
    }
    let z = ols_fit(design.view(), reduced_target.view())?.coefficients;
    let mut candidate = Array1::zeros(s_count);
    let mut acc = T::zero();
    for (j, &l) in others.iter().enumerate() {
        candidate[l] = z[j];
        acc = acc + sign[l] * z[j];
    }
    candidate[pivot] = sign[pivot] * (T::one() - acc);

    // largest feasible step towards the candidate
    let mut step = T::one();
    for l in 0..s_count {
        let new = sign[l] * candidate[l];
        if new < T::zero() {
            let old = sign[l] * current[l];
            step = step.min(old / (old - new));
        }
    }
    let mut q = &current + &((&candidate - &current) * step);
    for l in 0..s_count {
        if sign[l] * q[l] < T::zero() {
            q[l] = T::zero();
        }
    }
    // re-project onto the constraint to remove round-off
    let total: T = q.iter().map(|v| v.abs()).sum();
    Ok(q / total)
}

fn leading_is_negative<T: Real>(w: ArrayView1<'_, T>) -> bool {
    let mut best = T::zero();
    let mut neg = false;
    for v in w.iter() {
        if v.abs() > best {
            best = v.abs();
            neg = *v < T::zero();
        }
    }
    neg
}

fn check_weights<T: Real>(w: &Array1<T>, len: usize, what: &str) -> Result<Array1<T>> {
    if w.len() != len {
        return Err(GxeError::Dimension(format!("{what} initial weights have length {}, expected {len}", w.len())));
    }
    let total: T = w.iter().map(|v| v.abs()).sum();
    if !(total > T::zero()) || !total.is_finite() {
        return Err(GxeError::Domain(format!("{what} initial weights must not all be zero")));
    }
    Ok(w / total)
}

/// Fits a latent-score interaction model by alternating least squares.
///
/// Non-convergence within `max_iter` is reported through `converged = false`.
/// A free crossover is started from `−β̂_g/β̂_eg` of the standard fit unless an
/// initial value is supplied, and fails with [`GxeError::CrossoverDiverged`] once it
/// exceeds 100 times the span of the environmental score.
pub fn fit_legit<T: Real>(data: &GxEDataset<T>, form: ModelForm<T>, options: &FitOptions<T>) -> Result<LegitModel<T>> {
    let k = data.n_genes();
    let s_count = data.n_envs();
    let mut p = match &options.init.gene_weights {
        Some(w) => check_weights(w, k, "gene")?,
        None => Array1::from_elem(k, T::one() / T::from_count(k)),
    };
    let mut q = match &options.init.env_weights {
        Some(w) => check_weights(w, s_count, "environment")?,
        None => Array1::from_elem(s_count, T::one() / T::from_count(s_count)),
    };
    let c = match form.crossover {
        Crossover::Absent => T::zero(),
        Crossover::Fixed(c) => c,
        Crossover::Free => match options.init.crossover {
            Some(c) => c,
            None => {
                let standard = fit_legit(data, ModelForm::new(Crossover::Absent, form.beta_e), options)?;
                if standard.beta_eg == T::zero() {
                    return Err(GxeError::NoCrossover);
                }
                p = standard.gene_weights.clone();
                q = standard.env_weights.clone();
                -standard.beta_g / standard.beta_eg
            }
        },
    };

    let fitter = Fitter { data, form, layout: MainLayout::new(&form, data.n_covariates()) };
    let mut st = State {
        p,
        q,
        c,
        beta0: T::zero(),
        beta_e: T::zero(),
        beta_g: T::zero(),
        beta_eg: T::zero(),
        gamma: Array1::zeros(data.n_covariates()),
    };
    let free = matches!(form.crossover, Crossover::Free);
    if free {
        fitter.check_divergence(&st)?;
    }

    let mut r2_trace = Vec::new();
    let mut converged = false;
    let mut cycles = 0;
    let last_fit = loop {
        let fit = fitter.main_step(&mut st)?;
        if let Some(prev) = r2_trace.last() {
            if fit.r_squared - *prev < options.tol {
                r2_trace.push(fit.r_squared);
                converged = true;
                break fit;
            }
        }
        r2_trace.push(fit.r_squared);
        if cycles >= options.max_iter {
            break fit;
        }
        fitter.gene_step(&mut st)?;
        fitter.env_step(&mut st)?;
        if free {
            fitter.check_divergence(&st)?;
        }
        cycles += 1;
    };

    let n = data.n_obs();
    let n_free_params = count_free_params(&form, k, s_count, data.n_covariates());
    let ic = information_criteria(last_fit.log_likelihood, n_free_params, n)?;
    let crossover_se = if free { Some(fitter.crossover_se(&st, &last_fit)?) } else { None };
    let env_score = data.env_score(st.q.view())?;
    let env_score_range = value_range(env_score.view());
    let crossover = match form.crossover {
        Crossover::Absent => None,
        _ => Some(st.c),
    };
    Ok(LegitModel {
        beta0: st.beta0,
        beta_e: st.beta_e,
        beta_g: st.beta_g,
        beta_eg: st.beta_eg,
        covariate_coefficients: st.gamma,
        gene_weights: st.p,
        env_weights: st.q,
        crossover,
        form,
        diagnostics: FitDiagnostics {
            r_squared: last_fit.r_squared,
            rss: last_fit.rss,
            log_likelihood: last_fit.log_likelihood,
            aic: ic.aic,
            bic: ic.bic,
            n_obs: n,
            main_step: last_fit,
        },
        n_free_params,
        iterations_used: cycles,
        converged,
        r2_trace,
        env_score_range,
        crossover_se,
    })
}

/// `β̂₀ + β̂_e (e − c) + β̂_g g + β̂_eg (e − c) g + covariates`, with `c = 0` when absent.
pub fn predict<T: Real>(model: &LegitModel<T>, data: &GxEDataset<T>) -> Result<Array1<T>> {
    if data.n_covariates() != model.covariate_coefficients.len() {
        return Err(GxeError::Dimension(format!(
            "model has {} covariates, data has {}",
            model.covariate_coefficients.len(),
            data.n_covariates()
        )));
    }
    let g = data.gene_score(model.gene_weights.view())?;
    let e_shift = data.env_score(model.env_weights.view())? - model.crossover.unwrap_or(T::zero());
    let mut out =
        e_shift.mapv(|e| model.beta0 + model.beta_e * e) + &g * model.beta_g + &(&e_shift * &g) * model.beta_eg;
    if let Some(x) = data.covariates() {
        out = out + x.dot(&model.covariate_coefficients);
    }
    Ok(out)
}

/// Confidence interval `ĉ ± t · SE(ĉ)` for a free crossover, with `n − n_free_params` df.
pub fn crossover_interval<T: Real>(model: &LegitModel<T>, level: T) -> Result<(T, T)> {
    if !matches!(model.form.crossover, Crossover::Free) {
        return Err(GxeError::NoFreeCrossover);
    }
    if !model.converged {
        return Err(GxeError::NotConverged);
    }
    if !(level > T::zero() && level < T::one()) {
        return Err(GxeError::Domain(format!("confidence level must lie in (0, 1), got {level}")));
    }
    let n = model.n_obs();
    if n <= model.n_free_params {
        return Err(GxeError::Domain("no residual degrees of freedom for the crossover interval".into()));
    }
    let c = model.crossover.ok_or(GxeError::NoFreeCrossover)?;
    let se = model.crossover_se.ok_or(GxeError::NoFreeCrossover)?;
    let t = student_t_quantile(T::one() - (T::one() - level) / T::lit(2.0), n - model.n_free_params)?;
    Ok((c - t * se, c + t * se))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn toy() -> GxEDataset<f64> {
        let g = array![[0.0], [1.0], [0.0], [1.0], [1.0], [0.0], [1.0], [0.0], [0.0], [1.0]];
        let e = array![[0.1], [0.2], [0.3], [0.4], [0.5], [0.6], [0.7], [0.8], [0.9], [0.95]];
        let y = array![1.0, 1.3, 1.2, 2.0, 2.2, 1.7, 2.9, 1.9, 2.1, 3.3];
        GxEDataset::new(y, g, e, None).unwrap()
    }

    #[test]
    fn parameter_counts() {
        let weak_free = ModelForm::new(Crossover::<f64>::Free, EnvEffect::Free);
        assert_eq!(count_free_params(&weak_free, 1, 1, 0), 4);
        assert_eq!(count_free_params(&weak_free, 4, 3, 0), 9);
        let strong_fixed = ModelForm::new(Crossover::Fixed(0.0), EnvEffect::FixedZero);
        let weak_fixed = ModelForm::new(Crossover::Fixed(0.0), EnvEffect::Free);
        assert_eq!(count_free_params(&weak_fixed, 2, 2, 1) - count_free_params(&strong_fixed, 2, 2, 1), 1);
        assert_eq!(count_free_params(&ModelForm::<f64>::standard(), 1, 1, 2), 6);
    }

    #[test]
    fn strong_models_have_zero_env_effect() {
        let m = fit_legit(&toy(), ModelForm::new(Crossover::Fixed(1.0), EnvEffect::FixedZero), &FitOptions::default())
            .unwrap();
        assert_eq!(m.beta_e, 0.0);
        assert!(m.beta_e_fixed_zero());
        assert_eq!(m.crossover, Some(1.0));
    }

    #[test]
    fn predict_rejects_mismatched_data() {
        let m = fit_legit(&toy(), ModelForm::standard(), &FitOptions::default()).unwrap();
        let other = GxEDataset::new(
            array![1.0, 2.0, 3.0],
            array![[0.0, 1.0], [1.0, 1.0], [0.0, 0.0]],
            array![[0.1], [0.2], [0.3]],
            None,
        )
        .unwrap();
        assert!(matches!(predict(&m, &other), Err(GxeError::Dimension(_))));
    }

    #[test]
    fn zero_scores_predict_intercept() {
        let m = fit_legit(&toy(), ModelForm::standard(), &FitOptions::default()).unwrap();
        let zeros = GxEDataset::new(Array1::zeros(4), Array2::zeros((4, 1)), Array2::zeros((4, 1)), None).unwrap();
        let pred = predict(&m, &zeros).unwrap();
        assert!(pred.iter().all(|v| (*v - m.beta0).abs() < 1e-15));
    }

    #[test]
    fn interval_requires_free_crossover() {
        let m = fit_legit(&toy(), ModelForm::standard(), &FitOptions::default()).unwrap();
        assert_eq!(crossover_interval(&m, 0.95), Err(GxeError::NoFreeCrossover));
    }

    #[test]
    fn constrained_step_stays_on_face() {
        let a = array![[1.0f64, 0.0, 2.0], [0.0, 1.0, 1.0], [1.0, 1.0, 0.0], [2.0, 0.5, 1.0], [0.3, 0.2, 0.1]];
        let target = array![-3.0, 1.0, 0.5, -2.0, 0.4];
        let current = array![0.3, 0.3, 0.4];
        let q = constrained_weight_step(&a, &target, current.view()).unwrap();
        let total: f64 = q.iter().map(|v| v.abs()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let obj = |w: &Array1<f64>| {
            let r = &target - &a.dot(w);
            r.dot(&r)
        };
        assert!(obj(&q) <= obj(&current) + 1e-12);
    }
}
