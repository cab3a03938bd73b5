//! Competitive-confirmatory testing: six crossover-parametrized interaction models and
//! four models without an interaction, compared by BIC.

use std::cmp::Ordering;
use std::fmt;

use ndarray::{concatenate, Array1, Array2, Axis};

use crate::data::GxEDataset;
use crate::error::{GxeError, Result};
use crate::legit::{
    crossover_interval, fit_legit, Crossover, EnvEffect, FitOptions, InitialValues, LegitModel, ModelForm,
};
use crate::scalar::Real;
use crate::stats::{information_criteria, ols_fit, OlsFit};

/// Interaction pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    VantageSensitivity,
    DifferentialSusceptibility,
    DiathesisStress,
}

impl Pattern {
    pub const ALL: [Pattern; 3] =
        [Pattern::VantageSensitivity, Pattern::DifferentialSusceptibility, Pattern::DiathesisStress];

    pub fn label(self) -> Label {
        match self {
            Pattern::VantageSensitivity => Label::VantageSensitivity,
            Pattern::DifferentialSusceptibility => Label::DifferentialSusceptibility,
            Pattern::DiathesisStress => Label::DiathesisStress,
        }
    }

    fn title(self) -> &'static str {
        match self {
            Pattern::VantageSensitivity => "Vantage sensitivity",
            Pattern::DifferentialSusceptibility => "Differential susceptibility",
            Pattern::DiathesisStress => "Diathesis-stress",
        }
    }
}

/// Weak models estimate `β_e`; strong models fix it at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strength {
    Weak,
    Strong,
}

impl Strength {
    pub const ALL: [Strength; 2] = [Strength::Weak, Strength::Strong];

    pub fn env_effect(self) -> EnvEffect {
        match self {
            Strength::Weak => EnvEffect::Free,
            Strength::Strong => EnvEffect::FixedZero,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Strength::Weak => "weak",
            Strength::Strong => "strong",
        }
    }
}

/// Classification outcome shared by both approaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    DifferentialSusceptibility,
    DiathesisStress,
    VantageSensitivity,
    NoEvidence,
}

impl Label {
    pub const ALL: [Label; 4] =
        [Label::DifferentialSusceptibility, Label::DiathesisStress, Label::VantageSensitivity, Label::NoEvidence];

    /// Machine-friendly identifier.
    pub fn as_str(self) -> &'static str {
        match self {
            Label::DifferentialSusceptibility => "differential_susceptibility",
            Label::DiathesisStress => "diathesis_stress",
            Label::VantageSensitivity => "vantage_sensitivity",
            Label::NoEvidence => "no_evidence",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        Label::ALL.into_iter().find(|l| l.as_str() == s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::DifferentialSusceptibility => "differential susceptibility",
            Label::DiathesisStress => "diathesis-stress",
            Label::VantageSensitivity => "vantage sensitivity",
            Label::NoEvidence => "no evidence of G×E",
        })
    }
}

/// Models without an interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NullModel {
    InterceptOnly,
    GenesOnly,
    EnvironmentsOnly,
    GenesAndEnvironments,
}

impl NullModel {
    pub const ALL: [NullModel; 4] =
        [NullModel::InterceptOnly, NullModel::GenesOnly, NullModel::EnvironmentsOnly, NullModel::GenesAndEnvironments];

    fn title(self) -> &'static str {
        match self {
            NullModel::InterceptOnly => "Intercept only",
            NullModel::GenesOnly => "Genes only",
            NullModel::EnvironmentsOnly => "Environments only",
            NullModel::GenesAndEnvironments => "Genes and environments",
        }
    }
}

/// Identifies one member of the competitive set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKey {
    Gxe(Pattern, Strength),
    Null(NullModel),
}

impl ModelKey {
    /// The ten keys in canonical order.
    pub fn all() -> Vec<ModelKey> {
        let mut keys: Vec<ModelKey> =
            Pattern::ALL.iter().flat_map(|p| Strength::ALL.iter().map(move |s| ModelKey::Gxe(*p, *s))).collect();
        keys.extend(NullModel::ALL.iter().map(|m| ModelKey::Null(*m)));
        keys
    }

    pub fn is_null(self) -> bool {
        matches!(self, ModelKey::Null(_))
    }

    fn has_free_crossover(self) -> bool {
        matches!(self, ModelKey::Gxe(Pattern::DifferentialSusceptibility, _))
    }
}

impl fmt::Display for ModelKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKey::Gxe(p, s) => write!(f, "{} {}", p.title(), s.as_str().to_uppercase()),
            ModelKey::Null(m) => f.write_str(m.title()),
        }
    }
}

/// Where the fixed crossovers of the vantage-sensitivity and diathesis-stress models sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundMode {
    /// Theoretical minimum / maximum of the environmental score.
    #[default]
    Expected,
    /// Observed minimum / maximum of the environmental score.
    Observed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompetitiveOptions<T> {
    pub include_null_models: bool,
    pub bound_mode: BoundMode,
    /// Theoretical (min, max) shared by the environmental variables, e.g. (0, 100) after POMP coding.
    pub env_bounds: Option<(T, T)>,
    pub fit: FitOptions<T>,
    /// Confidence level of the crossover interval.
    pub level: T,
}

impl<T: Real> Default for CompetitiveOptions<T> {
    fn default() -> Self {
        Self {
            include_null_models: true,
            bound_mode: BoundMode::Expected,
            env_bounds: None,
            fit: FitOptions::default(),
            level: T::lit(0.95),
        }
    }
}

/// Plain OLS fit of a model without interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct NullFit<T> {
    pub kind: NullModel,
    pub ols: OlsFit<T>,
    pub n_params: usize,
    pub aic: T,
    pub bic: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GxeMember<T> {
    pub pattern: Pattern,
    pub strength: Strength,
    pub fit: Result<LegitModel<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompetitiveModelSet<T> {
    pub gxe: Vec<GxeMember<T>>,
    pub null: Vec<(NullModel, Result<NullFit<T>>)>,
    pub c_low: T,
    pub c_high: T,
    pub bound_mode: BoundMode,
    /// Standard-form weak fit the free-crossover models were started from.
    pub standard: Option<LegitModel<T>>,
    pub level: T,
}

impl<T: Real> CompetitiveModelSet<T> {
    pub fn get(&self, pattern: Pattern, strength: Strength) -> Option<&LegitModel<T>> {
        self.gxe.iter().find(|m| m.pattern == pattern && m.strength == strength).and_then(|m| m.fit.as_ref().ok())
    }

    pub fn null_fit(&self, kind: NullModel) -> Option<&NullFit<T>> {
        self.null.iter().find(|(k, _)| *k == kind).and_then(|(_, f)| f.as_ref().ok())
    }

    /// Per-member (BIC, AIC, free parameters) for every successful fit, in canonical order.
    pub fn criteria(&self) -> Vec<(ModelKey, T, T, usize)> {
        let mut out = Vec::new();
        for m in &self.gxe {
            if let Ok(fit) = &m.fit {
                out.push((
                    ModelKey::Gxe(m.pattern, m.strength),
                    fit.diagnostics.bic,
                    fit.diagnostics.aic,
                    fit.n_free_params,
                ));
            }
        }
        for (kind, fit) in &self.null {
            if let Ok(fit) = fit {
                out.push((ModelKey::Null(*kind), fit.bic, fit.aic, fit.n_params));
            }
        }
        out
    }

    /// Member fit failures, for diagnostics.
    pub fn failures(&self) -> Vec<(ModelKey, &GxeError)> {
        let mut out = Vec::new();
        for m in &self.gxe {
            if let Err(e) = &m.fit {
                out.push((ModelKey::Gxe(m.pattern, m.strength), e));
            }
        }
        for (kind, fit) in &self.null {
            if let Err(e) = fit {
                out.push((ModelKey::Null(*kind), e));
            }
        }
        out
    }
}

/// `c = −β_g / β_eg`.
pub fn crossover_from_coefficients<T: Real>(beta_g: T, beta_eg: T) -> Result<T> {
    if beta_eg == T::zero() {
        return Err(GxeError::NoCrossover);
    }
    Ok(-beta_g / beta_eg)
}

/// Fraction of environmental scores strictly below `c`.
pub fn proportion_affected<T: Real>(env_scores: &[T], c: T) -> T {
    if env_scores.is_empty() {
        return T::zero();
    }
    let below = env_scores.iter().filter(|e| **e < c).count();
    T::from_count(below) / T::from_count(env_scores.len())
}

fn null_design<T: Real>(data: &GxEDataset<T>, kind: NullModel) -> Array2<T> {
    let n = data.n_obs();
    let mut blocks: Vec<Array2<T>> = vec![Array2::ones((n, 1))];
    if matches!(kind, NullModel::GenesOnly | NullModel::GenesAndEnvironments) {
        blocks.push(data.genes().clone());
    }
    if matches!(kind, NullModel::EnvironmentsOnly | NullModel::GenesAndEnvironments) {
        blocks.push(data.environments().clone());
    }
    if let Some(x) = data.covariates() {
        blocks.push(x.clone());
    }
    let views: Vec<_> = blocks.iter().map(|b| b.view()).collect();
    concatenate(Axis(1), &views).expect("blocks share row count")
}

/// OLS fit of one model without interaction; covariates are always included.
pub fn fit_null_model<T: Real>(data: &GxEDataset<T>, kind: NullModel) -> Result<NullFit<T>> {
    let design = null_design(data, kind);
    let ols = ols_fit(design.view(), data.outcome())?;
    let n_params = design.ncols();
    let ic = information_criteria(ols.log_likelihood, n_params, data.n_obs())?;
    Ok(NullFit { kind, ols, n_params, aic: ic.aic, bic: ic.bic })
}

/// F statistic for adding the interaction to the standard latent-score model.
///
/// Values of at least 1 are the conventional gate for proceeding with competitive testing.
pub fn interaction_f_ratio<T: Real>(data: &GxEDataset<T>, options: &FitOptions<T>) -> Result<T> {
    let full = fit_legit(data, ModelForm::standard(), options)?;
    let reduced = fit_null_model(data, NullModel::GenesAndEnvironments)?;
    let df_resid = data
        .n_obs()
        .checked_sub(full.n_free_params)
        .filter(|d| *d > 0)
        .ok_or_else(|| GxeError::Dimension("no residual degrees of freedom for the interaction F-ratio".into()))?;
    let rss_full = full.diagnostics.rss;
    Ok((reduced.ols.rss - rss_full) / (rss_full / T::from_count(df_resid)))
}

fn resolve_bounds<T: Real>(
    data: &GxEDataset<T>,
    options: &CompetitiveOptions<T>,
    standard: Option<&LegitModel<T>>,
) -> (T, T) {
    match options.bound_mode {
        BoundMode::Expected => options.env_bounds.unwrap_or_else(|| {
            data.env_column_ranges()
                .into_iter()
                .fold((T::infinity(), T::neg_infinity()), |(lo, hi), (a, b)| (lo.min(a), hi.max(b)))
        }),
        BoundMode::Observed => match standard {
            Some(m) => m.env_score_range,
            None => {
                let q = Array1::from_elem(data.n_envs(), T::one() / T::from_count(data.n_envs()));
                let e = data.env_score(q.view()).expect("weights sized to data");
                crate::data::value_range(e.view())
            }
        },
    }
}

fn free_crossover_fit<T: Real>(
    data: &GxEDataset<T>,
    strength: Strength,
    standard: &Result<LegitModel<T>>,
    fit: &FitOptions<T>,
) -> Result<LegitModel<T>> {
    let standard = standard.as_ref().map_err(Clone::clone)?;
    let c = crossover_from_coefficients(standard.beta_g, standard.beta_eg)?;
    let options = FitOptions {
        init: InitialValues {
            gene_weights: Some(standard.gene_weights.clone()),
            env_weights: Some(standard.env_weights.clone()),
            crossover: Some(c),
        },
        ..fit.clone()
    };
    fit_legit(data, ModelForm::new(Crossover::Free, strength.env_effect()), &options)
}

/// Fits the six interaction models and, optionally, the four models without interaction.
///
/// Member failures are recorded per model rather than aborting the set.
pub fn fit_competitive_set<T: Real>(
    data: &GxEDataset<T>,
    options: &CompetitiveOptions<T>,
) -> Result<CompetitiveModelSet<T>> {
    let standard_weak = fit_legit(data, ModelForm::new(Crossover::Absent, EnvEffect::Free), &options.fit);
    let standard_strong = fit_legit(data, ModelForm::new(Crossover::Absent, EnvEffect::FixedZero), &options.fit);
    let (c_low, c_high) = resolve_bounds(data, options, standard_weak.as_ref().ok());
    if !(c_low.is_finite() && c_high.is_finite() && c_low < c_high) {
        return Err(GxeError::Domain(format!(
            "environmental score bounds must be finite with min < max, got ({c_low}, {c_high})"
        )));
    }

    let mut gxe = Vec::with_capacity(6);
    for pattern in Pattern::ALL {
        for strength in Strength::ALL {
            let fit = match pattern {
                Pattern::VantageSensitivity => {
                    fit_legit(data, ModelForm::new(Crossover::Fixed(c_low), strength.env_effect()), &options.fit)
                }
                Pattern::DiathesisStress => {
                    fit_legit(data, ModelForm::new(Crossover::Fixed(c_high), strength.env_effect()), &options.fit)
                }
                Pattern::DifferentialSusceptibility => {
                    let standard = match strength {
                        Strength::Weak => &standard_weak,
                        Strength::Strong => &standard_strong,
                    };
                    free_crossover_fit(data, strength, standard, &options.fit)
                }
            };
            gxe.push(GxeMember { pattern, strength, fit });
        }
    }

    let null = if options.include_null_models {
        NullModel::ALL.iter().map(|k| (*k, fit_null_model(data, *k))).collect()
    } else {
        Vec::new()
    };

    Ok(CompetitiveModelSet {
        gxe,
        null,
        c_low,
        c_high,
        bound_mode: options.bound_mode,
        standard: standard_weak.ok(),
        level: options.level,
    })
}

/// One candidate as seen by the decision rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<T> {
    pub key: ModelKey,
    pub bic: T,
    pub n_params: usize,
    /// For differential-susceptibility candidates: whether the crossover interval lies
    /// inside the observed environmental range.
    pub interval_within_range: Option<bool>,
}

fn candidate_order<T: Real>(a: &Candidate<T>, b: &Candidate<T>) -> Ordering {
    a.bic
        .partial_cmp(&b.bic)
        .unwrap_or(Ordering::Equal)
        .then(a.n_params.cmp(&b.n_params))
        .then(a.key.has_free_crossover().cmp(&b.key.has_free_crossover()))
        .then(a.key.cmp(&b.key))
}

/// Outcome of the BIC decision rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub label: Label,
    /// Model the label is read from.
    pub chosen: ModelKey,
    /// Model with the lowest BIC overall.
    pub best: ModelKey,
}

/// The decision rule: a model without interaction winning means no evidence; a winning
/// differential-susceptibility model needs its crossover interval inside the observed range;
/// otherwise the best vantage-sensitivity or diathesis-stress model decides.
pub fn decide<T: Real>(candidates: &[Candidate<T>]) -> Result<Decision> {
    let mut sorted: Vec<&Candidate<T>> = candidates.iter().filter(|c| c.bic.is_finite()).collect();
    sorted.sort_by(|a, b| candidate_order(a, b));
    let best = sorted.first().ok_or(GxeError::EmptyModelSet)?;
    match best.key {
        ModelKey::Null(_) => {
            return Ok(Decision { label: Label::NoEvidence, chosen: best.key, best: best.key });
        }
        ModelKey::Gxe(Pattern::DifferentialSusceptibility, _) if best.interval_within_range == Some(true) => {
            return Ok(Decision { label: Label::DifferentialSusceptibility, chosen: best.key, best: best.key });
        }
        _ => {}
    }
    let fallback =
        sorted.iter().find(|c| matches!(c.key, ModelKey::Gxe(p, _) if p != Pattern::DifferentialSusceptibility));
    Ok(match fallback {
        Some(c) => match c.key {
            ModelKey::Gxe(p, _) => Decision { label: p.label(), chosen: c.key, best: best.key },
            ModelKey::Null(_) => unreachable!("fallback only holds interaction models"),
        },
        None => Decision { label: Label::NoEvidence, chosen: best.key, best: best.key },
    })
}

/// One row of the BIC report.
#[derive(Debug, Clone, PartialEq)]
pub struct BicRow<T> {
    pub model: ModelKey,
    pub bic: T,
    pub n_params: usize,
    pub crossover: Option<T>,
    pub interval: Option<(T, T)>,
    pub within_observable_range: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GxEClassification<T> {
    pub label: Label,
    /// Informational only; never used for the label.
    pub strength: Option<Strength>,
    pub best_model: ModelKey,
    pub chosen_model: ModelKey,
    /// Crossover of the chosen model (estimated or fixed).
    pub crossover: Option<T>,
    /// Interval of the estimated crossover, when the chosen model estimates one.
    pub interval: Option<(T, T)>,
    pub within_observable_range: bool,
    pub proportion_affected: Option<T>,
    /// All successful fits sorted by ascending BIC.
    pub table: Vec<BicRow<T>>,
}

fn interval_within<T: Real>(model: &LegitModel<T>, level: T) -> (Option<(T, T)>, bool) {
    match crossover_interval(model, level) {
        Ok((lo, hi)) => {
            let (min, max) = model.env_score_range;
            (Some((lo, hi)), lo >= min && hi <= max)
        }
        Err(_) => (None, false),
    }
}

/// Applies the decision rule to a fitted set.
pub fn classify<T: Real>(set: &CompetitiveModelSet<T>, data: &GxEDataset<T>) -> Result<GxEClassification<T>> {
    let mut rows = Vec::new();
    for m in &set.gxe {
        let Ok(fit) = &m.fit else { continue };
        let (interval, within) = if m.pattern == Pattern::DifferentialSusceptibility {
            let (iv, w) = interval_within(fit, set.level);
            (iv, Some(w))
        } else {
            (None, None)
        };
        rows.push(BicRow {
            model: ModelKey::Gxe(m.pattern, m.strength),
            bic: fit.diagnostics.bic,
            n_params: fit.n_free_params,
            crossover: fit.crossover,
            interval,
            within_observable_range: within,
        });
    }
    for (kind, fit) in &set.null {
        let Ok(fit) = fit else { continue };
        rows.push(BicRow {
            model: ModelKey::Null(*kind),
            bic: fit.bic,
            n_params: fit.n_params,
            crossover: None,
            interval: None,
            within_observable_range: None,
        });
    }
    if rows.is_empty() {
        return Err(GxeError::EmptyModelSet);
    }
    let candidates: Vec<Candidate<T>> = rows
        .iter()
        .map(|r| Candidate {
            key: r.model,
            bic: r.bic,
            n_params: r.n_params,
            interval_within_range: r.within_observable_range,
        })
        .collect();
    let decision = decide(&candidates)?;
    rows.sort_by(|a, b| {
        candidate_order(
            &Candidate { key: a.model, bic: a.bic, n_params: a.n_params, interval_within_range: None },
            &Candidate { key: b.model, bic: b.bic, n_params: b.n_params, interval_within_range: None },
        )
    });

    let chosen_row = rows.iter().find(|r| r.model == decision.chosen).expect("chosen model has a row");
    let (strength, crossover, interval, within, pa) = match (decision.label, decision.chosen) {
        (Label::NoEvidence, _) | (_, ModelKey::Null(_)) => (None, None, None, false, None),
        (_, ModelKey::Gxe(pattern, strength)) => {
            let model = set.get(pattern, strength).expect("chosen interaction model is fitted");
            let scores = data.env_score(model.env_weights.view())?;
            let c = model.crossover.unwrap_or(T::zero());
            let pa = proportion_affected(scores.as_slice().expect("contiguous scores"), c);
            (
                Some(strength),
                model.crossover,
                chosen_row.interval,
                chosen_row.within_observable_range.unwrap_or(false),
                Some(pa),
            )
        }
    };
    Ok(GxEClassification {
        label: decision.label,
        strength,
        best_model: decision.best,
        chosen_model: decision.chosen,
        crossover,
        interval,
        within_observable_range: within,
        proportion_affected: pa,
        table: rows,
    })
}

/// How numbers are rendered in the BIC report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberStyle {
    /// Round to a number of decimals (trailing zeros dropped).
    Decimals(usize),
    /// Round to a number of significant digits (trailing zeros dropped).
    Significant(usize),
}

pub fn format_number(x: f64, style: NumberStyle) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let decimals = match style {
        NumberStyle::Decimals(d) => d,
        NumberStyle::Significant(sig) => {
            if x == 0.0 {
                0
            } else {
                let magnitude = x.abs().log10().floor() as i64;
                (sig as i64 - 1 - magnitude).max(0) as usize
            }
        }
    };
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// `(lo / hi)`
pub fn format_interval(lo: f64, hi: f64, style: NumberStyle) -> String {
    format!("({} / {})", format_number(lo, style), format_number(hi, style))
}

/// Header of the BIC report.
pub const REPORT_COLUMNS: [&str; 4] = ["BIC", "crossover", "crossover 95%", "Within observable range?"];

/// Renders the rows as cells under [`REPORT_COLUMNS`], preceded by the model name.
pub fn report_cells<T: Real>(rows: &[BicRow<T>], style: NumberStyle) -> Vec<[String; 5]> {
    rows.iter()
        .map(|r| {
            [
                r.model.to_string(),
                format_number(r.bic.to_f64_lossy(), style),
                r.crossover.map(|c| format_number(c.to_f64_lossy(), style)).unwrap_or_default(),
                r.interval
                    .map(|(lo, hi)| format_interval(lo.to_f64_lossy(), hi.to_f64_lossy(), style))
                    .unwrap_or_default(),
                r.within_observable_range.map(|w| if w { "Yes" } else { "No" }.to_string()).unwrap_or_default(),
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossover_arithmetic() {
        assert_eq!(crossover_from_coefficients(-2.0, 2.0).unwrap(), 1.0);
        assert_eq!(crossover_from_coefficients(0.0, 2.0).unwrap(), 0.0);
        assert_eq!(crossover_from_coefficients(1.0, 0.0), Err(GxeError::NoCrossover));
    }

    #[test]
    fn proportion_affected_counts_strictly_below() {
        let scores: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
        assert_eq!(proportion_affected(&scores, -1.0), 0.0);
        assert_eq!(proportion_affected(&scores, 2.0), 1.0);
        assert_eq!(proportion_affected(&scores, 0.5), 50.0 / 101.0);
    }

    fn cand(key: ModelKey, bic: f64, n_params: usize, within: Option<bool>) -> Candidate<f64> {
        Candidate { key, bic, n_params, interval_within_range: within }
    }

    #[test]
    fn figure_five_rows_give_vantage_sensitivity() {
        use Pattern::*;
        use Strength::*;
        let rows = vec![
            cand(ModelKey::Gxe(VantageSensitivity, Weak), 772.27, 3, None),
            cand(ModelKey::Gxe(DifferentialSusceptibility, Weak), 775.08, 4, Some(false)),
            cand(ModelKey::Gxe(DifferentialSusceptibility, Strong), 870.68, 3, Some(false)),
            cand(ModelKey::Gxe(VantageSensitivity, Strong), 930.4, 2, None),
            cand(ModelKey::Gxe(DiathesisStress, Weak), 971.12, 3, None),
            cand(ModelKey::Gxe(DiathesisStress, Strong), 1123.61, 2, None),
        ];
        let d = decide(&rows).unwrap();
        assert_eq!(d.label, Label::VantageSensitivity);
        assert_eq!(d.chosen, ModelKey::Gxe(VantageSensitivity, Weak));
    }

    #[test]
    fn null_winner_means_no_evidence() {
        let rows = vec![
            cand(ModelKey::Null(NullModel::InterceptOnly), 100.0, 1, None),
            cand(ModelKey::Gxe(Pattern::DiathesisStress, Strength::Weak), 101.0, 3, None),
        ];
        assert_eq!(decide(&rows).unwrap().label, Label::NoEvidence);
    }

    #[test]
    fn differential_susceptibility_outside_range_falls_back() {
        let rows = vec![
            cand(ModelKey::Gxe(Pattern::DifferentialSusceptibility, Strength::Weak), 90.0, 4, Some(false)),
            cand(ModelKey::Gxe(Pattern::DiathesisStress, Strength::Strong), 95.0, 2, None),
            cand(ModelKey::Gxe(Pattern::VantageSensitivity, Strength::Weak), 97.0, 3, None),
            cand(ModelKey::Null(NullModel::GenesAndEnvironments), 99.0, 3, None),
        ];
        let d = decide(&rows).unwrap();
        assert_eq!(d.label, Label::DiathesisStress);
        assert_eq!(d.best, ModelKey::Gxe(Pattern::DifferentialSusceptibility, Strength::Weak));

        let inside =
            vec![cand(ModelKey::Gxe(Pattern::DifferentialSusceptibility, Strength::Strong), 90.0, 3, Some(true))];
        assert_eq!(decide(&inside).unwrap().label, Label::DifferentialSusceptibility);
    }

    #[test]
    fn ties_prefer_fewer_parameters_then_fixed_crossover() {
        let rows = vec![
            cand(ModelKey::Gxe(Pattern::DiathesisStress, Strength::Weak), 50.0, 3, None),
            cand(ModelKey::Null(NullModel::GenesOnly), 50.0, 2, None),
        ];
        assert_eq!(decide(&rows).unwrap().label, Label::NoEvidence);

        let rows = vec![
            cand(ModelKey::Gxe(Pattern::DifferentialSusceptibility, Strength::Strong), 50.0, 3, Some(true)),
            cand(ModelKey::Gxe(Pattern::VantageSensitivity, Strength::Weak), 50.0, 3, None),
        ];
        assert_eq!(decide(&rows).unwrap().label, Label::VantageSensitivity);
    }

    #[test]
    fn empty_candidates_error() {
        assert_eq!(decide::<f64>(&[]), Err(GxeError::EmptyModelSet));
    }

    #[test]
    fn figure_five_number_format() {
        let style = NumberStyle::Decimals(2);
        assert_eq!(format_number(-0.4, style), "-0.4");
        assert_eq!(format_number(930.4, style), "930.4");
        assert_eq!(format_number(772.2712, style), "772.27");
        assert_eq!(format_interval(-0.73, -0.07, style), "(-0.73 / -0.07)");
        assert_eq!(format_number(1234.56789, NumberStyle::Significant(6)), "1234.57");
        assert_eq!(format_number(0.000123456789, NumberStyle::Significant(6)), "0.000123457");
    }

    #[test]
    fn labels_round_trip_through_identifiers() {
        for l in Label::ALL {
            assert_eq!(Label::parse(l.as_str()), Some(l));
        }
        assert_eq!(Label::NoEvidence.to_string(), "no evidence of G×E");
        assert_eq!(
            ModelKey::Gxe(Pattern::DifferentialSusceptibility, Strength::Weak).to_string(),
            "Differential susceptibility WEAK"
        );
    }
}
