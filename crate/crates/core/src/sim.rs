//! Monte Carlo accuracy study: generate data under known interaction patterns, classify,
//! and tally.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use ndarray::{Array1, Array2, Axis};
use rayon::prelude::*;

use crate::classify::{classify, fit_competitive_set, CompetitiveOptions, Label, Pattern, Strength};
use crate::data::GxEDataset;
use crate::error::{GxeError, Result};
use crate::legit::{fit_legit, Crossover, EnvEffect, FitOptions, LegitModel, ModelForm};
use crate::ros::{ros_analysis, DfConvention};
use crate::scalar::Real;
use crate::stats::{mix_seed, sample_bernoulli, sample_beta, sample_gaussian};

pub const BETA_0: f64 = 3.0;
pub const BETA_EG: f64 = 2.0;
/// `β_e` of weak models and of the null model.
pub const BETA_E_WEAK: f64 = 1.0;
/// Main gene effect of the null model.
pub const BETA_G_NULL: f64 = 1.0;
/// Risk-allele frequency.
pub const GENE_FREQUENCY: f64 = 0.3;
/// First shape parameter of the environmental Beta distribution.
pub const ENV_ALPHA: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EffectSize {
    Small,
    Medium,
    Large,
}

impl EffectSize {
    pub const ALL: [EffectSize; 3] = [EffectSize::Small, EffectSize::Medium, EffectSize::Large];

    /// Target R²: .05/.10/.15 with one gene and one environment, .10/.20/.40 otherwise.
    pub fn target_r2(self, single: bool) -> f64 {
        match (self, single) {
            (EffectSize::Small, true) => 0.05,
            (EffectSize::Medium, true) => 0.10,
            (EffectSize::Large, true) => 0.15,
            (EffectSize::Small, false) => 0.10,
            (EffectSize::Medium, false) => 0.20,
            (EffectSize::Large, false) => 0.40,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EffectSize::Small => "small",
            EffectSize::Medium => "medium",
            EffectSize::Large => "large",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.as_str() == s)
    }
}

/// Data-generating model of one replicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenerativeModel {
    Gxe(Pattern, Strength),
    Null,
}

impl GenerativeModel {
    pub const ALL: [GenerativeModel; 7] = [
        GenerativeModel::Gxe(Pattern::VantageSensitivity, Strength::Weak),
        GenerativeModel::Gxe(Pattern::VantageSensitivity, Strength::Strong),
        GenerativeModel::Gxe(Pattern::DifferentialSusceptibility, Strength::Weak),
        GenerativeModel::Gxe(Pattern::DifferentialSusceptibility, Strength::Strong),
        GenerativeModel::Gxe(Pattern::DiathesisStress, Strength::Weak),
        GenerativeModel::Gxe(Pattern::DiathesisStress, Strength::Strong),
        GenerativeModel::Null,
    ];

    pub fn true_label(self) -> Label {
        match self {
            GenerativeModel::Gxe(p, _) => p.label(),
            GenerativeModel::Null => Label::NoEvidence,
        }
    }

    /// Crossover point on the environmental scale, given the differential-susceptibility one.
    pub fn crossover(self, ds_crossover: f64) -> Option<f64> {
        match self {
            GenerativeModel::Gxe(Pattern::VantageSensitivity, _) => Some(0.0),
            GenerativeModel::Gxe(Pattern::DifferentialSusceptibility, _) => Some(ds_crossover),
            GenerativeModel::Gxe(Pattern::DiathesisStress, _) => Some(1.0),
            GenerativeModel::Null => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GenerativeModel::Gxe(Pattern::VantageSensitivity, Strength::Weak) => "vs_weak",
            GenerativeModel::Gxe(Pattern::VantageSensitivity, Strength::Strong) => "vs_strong",
            GenerativeModel::Gxe(Pattern::DifferentialSusceptibility, Strength::Weak) => "ds_weak",
            GenerativeModel::Gxe(Pattern::DifferentialSusceptibility, Strength::Strong) => "ds_strong",
            GenerativeModel::Gxe(Pattern::DiathesisStress, Strength::Weak) => "dst_weak",
            GenerativeModel::Gxe(Pattern::DiathesisStress, Strength::Strong) => "dst_strong",
            GenerativeModel::Null => "null",
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|m| *m == self).expect("listed")
    }
}

/// One cell of the study grid, run under every generative model of the study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub n_genes: usize,
    pub n_envs: usize,
    pub sample_size: usize,
    /// Second Beta shape: 2 is symmetric, 4 is skewed towards low values.
    pub env_beta: f64,
    /// Crossover of the differential-susceptibility models.
    pub ds_crossover: f64,
    pub effect_size: EffectSize,
}

impl Scenario {
    pub fn single(sample_size: usize, env_beta: f64, ds_crossover: f64, effect_size: EffectSize) -> Self {
        Self { n_genes: 1, n_envs: 1, sample_size, env_beta, ds_crossover, effect_size }
    }

    pub fn multi(sample_size: usize, env_beta: f64, ds_crossover: f64, effect_size: EffectSize) -> Self {
        Self { n_genes: 4, n_envs: 3, sample_size, env_beta, ds_crossover, effect_size }
    }

    pub fn is_single(&self) -> bool {
        self.n_genes == 1 && self.n_envs == 1
    }

    pub fn target_r2(&self) -> f64 {
        self.effect_size.target_r2(self.is_single())
    }

    fn validate(&self) -> Result<()> {
        if self.n_genes == 0 || self.n_envs == 0 {
            return Err(GxeError::Domain("scenario needs at least one gene and one environment".into()));
        }
        if self.sample_size < 2 {
            return Err(GxeError::Domain(format!("sample size must be at least 2, got {}", self.sample_size)));
        }
        if !(self.env_beta > 0.0 && self.env_beta.is_finite()) {
            return Err(GxeError::Domain(format!("env_beta must be positive, got {}", self.env_beta)));
        }
        if !self.ds_crossover.is_finite() {
            return Err(GxeError::Domain("crossover must be finite".into()));
        }
        Ok(())
    }

    /// The figure grid: N ∈ {250, 500, 1000, 2000} × Beta(2,2)/Beta(2,4) × c ∈ {.25, .50} × effect size.
    pub fn figure_grid(multi: bool) -> Vec<Scenario> {
        let mut out = Vec::new();
        for n in [250, 500, 1000, 2000] {
            for beta in [2.0, 4.0] {
                for c in [0.25, 0.5] {
                    for es in EffectSize::ALL {
                        out.push(if multi { Self::multi(n, beta, c, es) } else { Self::single(n, beta, c, es) });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x{} N={} Beta(2,{}) c={} {}",
            self.n_genes,
            self.n_envs,
            self.sample_size,
            self.env_beta,
            self.ds_crossover,
            self.effect_size.as_str()
        )
    }
}

/// `σ = √(Var(signal)·(1 − R²)/R²)` with the variance taken over the given signal.
pub fn solve_noise_sd<T: Real>(signal: &Array1<T>, target_r2: f64) -> Result<f64> {
    if !(target_r2 > 0.0 && target_r2 < 1.0) {
        return Err(GxeError::Domain(format!("target R² must lie in (0, 1), got {target_r2}")));
    }
    let n = signal.len();
    if n == 0 {
        return Err(GxeError::NonPositiveVariance(0.0));
    }
    let mean = signal.iter().map(|v| v.to_f64_lossy()).sum::<f64>() / n as f64;
    let var = signal.iter().map(|v| (v.to_f64_lossy() - mean).powi(2)).sum::<f64>() / n as f64;
    if !(var > 0.0) {
        return Err(GxeError::NonPositiveVariance(var));
    }
    Ok((var * (1.0 - target_r2) / target_r2).sqrt())
}

/// Draws one dataset under `model`; returns it with its true label.
pub fn generate_dataset<T: Real>(
    scenario: &Scenario,
    model: GenerativeModel,
    seed: u64,
) -> Result<(GxEDataset<T>, Label)> {
    generate_dataset_with(scenario, model, seed, BETA_G_NULL)
}

/// As [`generate_dataset`], with the main gene effect of the null model given explicitly.
pub fn generate_dataset_with<T: Real>(
    scenario: &Scenario,
    model: GenerativeModel,
    seed: u64,
    null_gene_effect: f64,
) -> Result<(GxEDataset<T>, Label)> {
    scenario.validate()?;
    let (n, k, s) = (scenario.sample_size, scenario.n_genes, scenario.n_envs);
    let mut genes = Array2::<T>::zeros((n, k));
    for j in 0..k {
        genes.column_mut(j).assign(&sample_bernoulli::<T>(GENE_FREQUENCY, n, mix_seed(seed, 100 + j as u64))?);
    }
    let mut envs = Array2::<T>::zeros((n, s));
    for l in 0..s {
        envs.column_mut(l).assign(&sample_beta::<T>(ENV_ALPHA, scenario.env_beta, n, mix_seed(seed, 200 + l as u64))?);
    }
    let g = genes.mean_axis(Axis(1)).expect("k ≥ 1");
    let e = envs.mean_axis(Axis(1)).expect("s ≥ 1");

    let b0 = T::lit(BETA_0);
    let signal: Array1<T> = match model {
        GenerativeModel::Null => {
            let (be, bg) = (T::lit(BETA_E_WEAK), T::lit(null_gene_effect));
            e.iter().zip(g.iter()).map(|(e, g)| b0 + be * *e + bg * *g).collect()
        }
        GenerativeModel::Gxe(_, strength) => {
            let c = T::lit(model.crossover(scenario.ds_crossover).expect("interaction model"));
            let be = match strength {
                Strength::Weak => T::lit(BETA_E_WEAK),
                Strength::Strong => T::zero(),
            };
            let beg = T::lit(BETA_EG);
            e.iter().zip(g.iter()).map(|(e, g)| b0 + be * (*e - c) + beg * (*e - c) * *g).collect()
        }
    };
    let sd = solve_noise_sd(&signal, scenario.target_r2())?;
    let noise = sample_gaussian::<T>(sd, n, mix_seed(seed, 300))?;
    let outcome = signal + noise;
    Ok((GxEDataset::new(outcome, genes, envs, None)?, model.true_label()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    CompetitiveConfirmatory,
    RegionsOfSignificance,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::CompetitiveConfirmatory, Method::RegionsOfSignificance];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::CompetitiveConfirmatory => "competitive_confirmatory",
            Method::RegionsOfSignificance => "ros",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyOptions {
    pub seed: u64,
    /// Replicates per generative model and cell.
    pub replicates: usize,
    /// Worker threads; results do not depend on it.
    pub parallelism: usize,
    pub methods: Vec<Method>,
    /// Generative models to simulate; all seven by default.
    pub models: Vec<GenerativeModel>,
    pub include_null_models: bool,
    /// Main gene effect of the null generative model.
    pub null_gene_effect: f64,
    /// Overrides the dimension-based default.
    pub alpha: Option<f64>,
    pub df_convention: DfConvention,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
}

impl Default for StudyOptions {
    fn default() -> Self {
        Self {
            seed: 1,
            replicates: 100,
            parallelism: 1,
            methods: Method::ALL.to_vec(),
            models: GenerativeModel::ALL.to_vec(),
            include_null_models: true,
            null_gene_effect: BETA_G_NULL,
            alpha: None,
            df_convention: DfConvention::Residual,
            tol: None,
            max_iter: None,
        }
    }
}

/// Tallies for one (cell, method).
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyTable {
    pub scenario: Scenario,
    pub method: Method,
    /// Replicates per generative model.
    pub replicates: usize,
    /// Rows follow [`GenerativeModel::ALL`], columns [`Label::ALL`].
    pub confusion: [[usize; 4]; 7],
    /// Replicates whose analysis failed, per generative model; counted as misclassified.
    pub errors: [usize; 7],
}

impl AccuracyTable {
    fn empty(scenario: Scenario, method: Method, replicates: usize) -> Self {
        Self { scenario, method, replicates, confusion: [[0; 4]; 7], errors: [0; 7] }
    }

    pub fn count(&self, model: GenerativeModel, label: Label) -> usize {
        self.confusion[model.index()][label_index(label)]
    }

    pub fn correct(&self, model: GenerativeModel) -> usize {
        self.count(model, model.true_label())
    }

    /// Fraction correct pooled over the six interaction models.
    pub fn accuracy(&self) -> Option<f64> {
        let total: usize = GenerativeModel::ALL[..6].iter().map(|m| self.total(*m)).sum();
        let correct: usize = GenerativeModel::ALL[..6].iter().map(|m| self.correct(*m)).sum();
        (total > 0).then(|| correct as f64 / total as f64)
    }

    /// Fraction of null replicates labeled as anything but no evidence.
    pub fn false_positive_rate(&self) -> Option<f64> {
        let total = self.total(GenerativeModel::Null);
        (total > 0).then(|| (total - self.correct(GenerativeModel::Null)) as f64 / total as f64)
    }

    /// Replicates tallied for one model, failures included.
    pub fn total(&self, model: GenerativeModel) -> usize {
        let i = model.index();
        self.confusion[i].iter().sum::<usize>() + self.errors[i]
    }
}

fn label_index(label: Label) -> usize {
    Label::ALL.iter().position(|l| *l == label).expect("listed")
}

/// Numerical health of every fit made during a study.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FitHealth {
    pub fits: usize,
    /// Largest `|Σ|w| − 1|` over gene and environment weights.
    pub max_constraint_error: f64,
    /// Largest drop between consecutive R² values of an alternating fit.
    pub max_r2_decrease: f64,
}

impl FitHealth {
    fn record<T: Real>(&mut self, model: &LegitModel<T>) {
        self.fits += 1;
        for w in [&model.gene_weights, &model.env_weights] {
            let s: f64 = w.iter().map(|v| v.to_f64_lossy().abs()).sum();
            self.max_constraint_error = self.max_constraint_error.max((s - 1.0).abs());
        }
        for pair in model.r2_trace.windows(2) {
            let drop = (pair[0] - pair[1]).to_f64_lossy();
            self.max_r2_decrease = self.max_r2_decrease.max(drop);
        }
    }

    fn merge(&mut self, other: &FitHealth) {
        self.fits += other.fits;
        self.max_constraint_error = self.max_constraint_error.max(other.max_constraint_error);
        self.max_r2_decrease = self.max_r2_decrease.max(other.max_r2_decrease);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyResults {
    /// One table per (scenario, method), scenarios in input order, methods in option order.
    pub tables: Vec<AccuracyTable>,
    pub health: FitHealth,
    /// Failure messages and how often they occurred.
    pub failures: BTreeMap<String, usize>,
}

/// Stream seed of one replicate.
pub fn replicate_seed(study_seed: u64, scenario_index: usize, model: GenerativeModel, replicate: usize) -> u64 {
    let s = mix_seed(study_seed, scenario_index as u64);
    let s = mix_seed(s, model.index() as u64);
    mix_seed(s, replicate as u64)
}

struct ReplicateOutcome {
    labels: Vec<std::result::Result<Label, String>>,
    health: FitHealth,
}

fn fit_options<T: Real>(options: &StudyOptions) -> FitOptions<T> {
    let mut fit = FitOptions::default();
    if let Some(tol) = options.tol {
        fit.tol = T::lit(tol);
    }
    if let Some(max_iter) = options.max_iter {
        fit.max_iter = max_iter;
    }
    fit
}

fn run_replicate<T: Real>(
    scenario: &Scenario,
    model: GenerativeModel,
    seed: u64,
    options: &StudyOptions,
) -> ReplicateOutcome {
    let mut health = FitHealth::default();
    let data = match generate_dataset_with::<T>(scenario, model, seed, options.null_gene_effect) {
        Ok((data, _)) => data,
        Err(e) => {
            let msg = format!("generation: {e}");
            return ReplicateOutcome { labels: vec![Err(msg); options.methods.len()], health };
        }
    };
    let fit = fit_options::<T>(options);
    let competitive = CompetitiveOptions {
        include_null_models: options.include_null_models,
        env_bounds: Some((T::zero(), T::one())),
        fit: fit.clone(),
        ..CompetitiveOptions::default()
    };
    let mut standard: Option<LegitModel<T>> = None;
    let mut labels = Vec::with_capacity(options.methods.len());
    for method in &options.methods {
        let label = match method {
            Method::CompetitiveConfirmatory => fit_competitive_set(&data, &competitive).and_then(|set| {
                for m in &set.gxe {
                    if let Ok(fit) = &m.fit {
                        health.record(fit);
                    }
                }
                if let Some(s) = &set.standard {
                    health.record(s);
                    standard.get_or_insert_with(|| s.clone());
                }
                classify(&set, &data).map(|c| c.label)
            }),
            Method::RegionsOfSignificance => {
                let model = match &standard {
                    Some(m) => Ok(m.clone()),
                    None => fit_legit(&data, ModelForm::new(Crossover::Absent, EnvEffect::Free), &fit).inspect(|m| {
                        health.record(m);
                        standard = Some(m.clone());
                    }),
                };
                model.and_then(|m| ros_analysis(&m, options.alpha.map(T::lit), options.df_convention).map(|r| r.label))
            }
        };
        labels.push(label.map_err(|e| format!("{}: {e}", method.as_str())));
    }
    ReplicateOutcome { labels, health }
}

/// Runs every scenario under each configured generative model.
///
/// Each replicate draws from its own seed, so the tables are identical for any
/// `parallelism`.
pub fn run_study<T: Real>(scenarios: &[Scenario], options: &StudyOptions) -> Result<StudyResults> {
    for s in scenarios {
        s.validate()?;
    }
    let mut results = StudyResults { tables: Vec::new(), health: FitHealth::default(), failures: BTreeMap::new() };
    if options.replicates == 0 || options.methods.is_empty() {
        return Ok(results);
    }
    let units: Vec<(usize, GenerativeModel, usize)> = scenarios
        .iter()
        .enumerate()
        .flat_map(|(i, _)| options.models.iter().flat_map(move |&m| (0..options.replicates).map(move |r| (i, m, r))))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.parallelism.max(1))
        .build()
        .map_err(|e| GxeError::Io(format!("thread pool: {e}")))?;
    let outcomes: Vec<ReplicateOutcome> = pool.install(|| {
        units
            .par_iter()
            .map(|&(i, m, r)| run_replicate::<T>(&scenarios[i], m, replicate_seed(options.seed, i, m, r), options))
            .collect()
    });

    results.tables = scenarios
        .iter()
        .flat_map(|s| options.methods.iter().map(move |m| AccuracyTable::empty(*s, *m, options.replicates)))
        .collect();
    let n_methods = options.methods.len();
    for (&(i, model, _), outcome) in units.iter().zip(&outcomes) {
        results.health.merge(&outcome.health);
        for (j, label) in outcome.labels.iter().enumerate() {
            let table = &mut results.tables[i * n_methods + j];
            match label {
                Ok(l) => table.confusion[model.index()][label_index(*l)] += 1,
                Err(msg) => {
                    table.errors[model.index()] += 1;
                    *results.failures.entry(msg.clone()).or_default() += 1;
                }
            }
        }
    }
    Ok(results)
}

const SCENARIO_COLUMNS: [&str; 7] =
    ["n_genes", "n_envs", "sample_size", "env_beta", "ds_crossover", "effect_size", "target_r2"];

/// Column names of the results file.
pub fn results_header() -> Vec<String> {
    let mut h: Vec<String> = SCENARIO_COLUMNS.iter().map(|s| s.to_string()).collect();
    h.extend(["replicates", "method", "accuracy", "false_positive_rate"].map(String::from));
    for m in GenerativeModel::ALL {
        for l in Label::ALL {
            h.push(format!("{}__{}", m.as_str(), l.as_str()));
        }
        h.push(format!("{}__error", m.as_str()));
    }
    h
}

fn scenario_cells(s: &Scenario) -> Vec<String> {
    vec![
        s.n_genes.to_string(),
        s.n_envs.to_string(),
        s.sample_size.to_string(),
        s.env_beta.to_string(),
        s.ds_crossover.to_string(),
        s.effect_size.as_str().to_string(),
        s.target_r2().to_string(),
    ]
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes one row per (scenario, method) under [`results_header`].
pub fn write_results<W: Write>(tables: &[AccuracyTable], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(results_header())?;
    for t in tables {
        let mut row = scenario_cells(&t.scenario);
        row.push(t.replicates.to_string());
        row.push(t.method.as_str().to_string());
        row.push(opt_cell(t.accuracy()));
        row.push(opt_cell(t.false_positive_rate()));
        for (i, counts) in t.confusion.iter().enumerate() {
            row.extend(counts.iter().map(|c| c.to_string()));
            row.push(t.errors[i].to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_results(tables: &[AccuracyTable], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| GxeError::Io(format!("{}: {e}", path.display())))?;
    write_results(tables, std::io::BufWriter::new(file))
}

fn field<'a>(record: &'a csv::StringRecord, header: &csv::StringRecord, name: &str) -> Result<&'a str> {
    let i =
        header.iter().position(|h| h == name).ok_or_else(|| GxeError::Format(format!("missing column `{name}`")))?;
    record.get(i).ok_or_else(|| GxeError::Format(format!("row is missing column `{name}`")))
}

fn parse<V: std::str::FromStr>(s: &str, name: &str) -> Result<V> {
    s.parse().map_err(|_| GxeError::Format(format!("column `{name}`: cannot parse `{s}`")))
}

/// Reads tables written by [`write_results`]; derived columns are recomputed, not trusted.
pub fn read_results<R: Read>(reader: R) -> Result<Vec<AccuracyTable>> {
    let mut r = csv::Reader::from_reader(reader);
    let header = r.headers()?.clone();
    let mut out = Vec::new();
    for record in r.records() {
        let record = record?;
        let get = |name: &str| field(&record, &header, name);
        let effect = get("effect_size")?;
        let scenario = Scenario {
            n_genes: parse(get("n_genes")?, "n_genes")?,
            n_envs: parse(get("n_envs")?, "n_envs")?,
            sample_size: parse(get("sample_size")?, "sample_size")?,
            env_beta: parse(get("env_beta")?, "env_beta")?,
            ds_crossover: parse(get("ds_crossover")?, "ds_crossover")?,
            effect_size: EffectSize::parse(effect)
                .ok_or_else(|| GxeError::Format(format!("unknown effect size `{effect}`")))?,
        };
        let method = get("method")?;
        let method = Method::parse(method).ok_or_else(|| GxeError::Format(format!("unknown method `{method}`")))?;
        let mut table = AccuracyTable::empty(scenario, method, parse(get("replicates")?, "replicates")?);
        for (i, m) in GenerativeModel::ALL.iter().enumerate() {
            for (j, l) in Label::ALL.iter().enumerate() {
                let name = format!("{}__{}", m.as_str(), l.as_str());
                table.confusion[i][j] = parse(get(&name)?, &name)?;
            }
            let name = format!("{}__error", m.as_str());
            table.errors[i] = parse(get(&name)?, &name)?;
        }
        out.push(table);
    }
    Ok(out)
}

pub fn import_results(path: &Path) -> Result<Vec<AccuracyTable>> {
    let file = std::fs::File::open(path).map_err(|e| GxeError::Io(format!("{}: {e}", path.display())))?;
    read_results(file)
}

/// Long format for plotting: one row per (scenario, method, metric).
pub fn write_plot_table<W: Write>(tables: &[AccuracyTable], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<&str> = SCENARIO_COLUMNS.to_vec();
    header.extend(["method", "metric", "value"]);
    w.write_record(&header)?;
    for t in tables {
        for (metric, value) in [("accuracy", t.accuracy()), ("false_positive_rate", t.false_positive_rate())] {
            let mut row = scenario_cells(&t.scenario);
            row.push(t.method.as_str().to_string());
            row.push(metric.to_string());
            row.push(opt_cell(value));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn export_plot_table(tables: &[AccuracyTable], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| GxeError::Io(format!("{}: {e}", path.display())))?;
    write_plot_table(tables, std::io::BufWriter::new(file))
}
