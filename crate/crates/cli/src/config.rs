use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use gxe_core::sim::BETA_G_NULL;
use gxe_core::{BoundMode, DfConvention, EffectSize, FitOptions, GenerativeModel, Method, Pattern, Scenario, Strength};

use crate::error::{CliError, Result};
use crate::ingest::RoleMapping;

#[derive(Parser, Debug)]
#[command(name = "gxe", version, about = "Latent gene-by-environment interaction testing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fit one latent interaction model and report coefficients, weights and diagnostics.
    Fit(FitArgs),
    /// Competitive-confirmatory test: BIC table, label and proportion affected.
    Classify(ClassifyArgs),
    /// Regions of significance: Johnson-Neyman bounds and the bound-based label.
    Ros(RosArgs),
    /// Run a simulation study and write accuracy tables.
    Simulate(SimulateArgs),
    /// Rescale columns to percent of maximum possible (0 to 100).
    Pomp(PompArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct DataArgs {
    /// INI file; keys match flag names, sections match commands.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Input CSV with a header row.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Outcome column.
    #[arg(long)]
    pub outcome: Option<String>,
    /// Gene columns, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub genes: Option<Vec<String>>,
    /// Environment columns, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub envs: Option<Vec<String>>,
    /// Covariate columns, comma separated; they enter every model, null models included.
    #[arg(long, value_delimiter = ',')]
    pub covariates: Option<Vec<String>>,
    /// Write a full-precision CSV report here.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Convergence tolerance on the main-model R².
    #[arg(long)]
    pub tol: Option<f64>,
    /// Maximum alternating iterations per fit.
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Theoretical range `LO:HI` shared by the environment columns.
    #[arg(long)]
    pub env_range: Option<String>,
    /// Rescale environment columns to 0-100 before fitting.
    #[arg(long)]
    pub pomp: bool,
}

#[derive(Args, Debug, Clone)]
pub struct FitArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// `standard`, or a pattern model: vs_weak, vs_strong, ds_weak, ds_strong, dst_weak, dst_strong.
    #[arg(long)]
    pub model: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Crossover placement of the fixed models: expected or observed.
    #[arg(long)]
    pub bounds: Option<String>,
    /// Compare the six interaction models only.
    #[arg(long)]
    pub no_null_models: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RosArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Significance level; defaults to .05 with one gene and one environment, .0001 otherwise.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Degrees of freedom convention: residual or reduced (one fewer).
    #[arg(long)]
    pub df: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SimulateArgs {
    /// INI file; keys match flag names, sections match commands.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Results CSV, one row per scenario and method.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Long-format table for plotting; defaults to `<output>_plot.csv`.
    #[arg(long)]
    pub plot_output: Option<PathBuf>,
    /// Base seed; every replicate seed is derived from it.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Replicates per generative model and scenario.
    #[arg(long)]
    pub replicates: Option<usize>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// single, multi or both.
    #[arg(long)]
    pub setting: Option<String>,
    /// Sample sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sample_sizes: Option<Vec<usize>>,
    /// Second shape parameter of the Beta(2, b) environments.
    #[arg(long, value_delimiter = ',')]
    pub env_betas: Option<Vec<f64>>,
    /// Crossover points of the differential-susceptibility models.
    #[arg(long, value_delimiter = ',')]
    pub crossovers: Option<Vec<f64>>,
    /// small, medium, large.
    #[arg(long, value_delimiter = ',')]
    pub effect_sizes: Option<Vec<String>>,
    /// competitive_confirmatory, ros.
    #[arg(long, value_delimiter = ',')]
    pub methods: Option<Vec<String>>,
    /// Main gene effect of the model without interaction.
    #[arg(long)]
    pub null_gene_effect: Option<f64>,
    /// Fixed RoS alpha instead of the dimension-based default.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// RoS degrees of freedom: residual or reduced (one fewer).
    #[arg(long)]
    pub df: Option<String>,
    /// Convergence tolerance on the main-model R².
    #[arg(long)]
    pub tol: Option<f64>,
    /// Maximum alternating iterations per fit.
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Compare the six interaction models only.
    #[arg(long)]
    pub no_null_models: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct PompArgs {
    /// INI file; keys match flag names, sections match commands.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Input CSV with a header row.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Columns to rescale, comma separated; other columns are copied unchanged.
    #[arg(long, value_delimiter = ',')]
    pub columns: Option<Vec<String>>,
    /// Theoretical range `LO:HI` of the rescaled columns; observed extremes otherwise.
    #[arg(long)]
    pub env_range: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Where to record the bounds used; defaults to `<output>_bounds.csv`.
    #[arg(long)]
    pub bounds_output: Option<PathBuf>,
}

/// Key-value settings from the general section overlaid by the command's section.
#[derive(Debug, Clone, Default)]
pub struct Layer {
    values: HashMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('_', "-")
}

impl Layer {
    pub fn load(path: Option<&Path>, section: &str) -> Result<Self> {
        let Some(path) = path else { return Ok(Self::default()) };
        let ini = ini::Ini::load_from_file(path).map_err(|e| match e {
            ini::Error::Io(e) => CliError::Io(format!("{}: {e}", path.display())),
            ini::Error::Parse(e) => CliError::Input(format!("{}: {e}", path.display())),
        })?;
        let mut values = HashMap::new();
        for props in [ini.general_section(), ini.section(Some(section)).unwrap_or(ini.general_section())] {
            for (k, v) in props.iter() {
                values.insert(normalize(k), v.trim().to_string());
            }
        }
        Ok(Self { values })
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        Self { values: pairs.into_iter().map(|(k, v)| (normalize(k), v.to_string())).collect() }
    }

    fn text(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str).filter(|v| !v.is_empty())
    }

    fn parse<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.text(key)
            .map(|v| v.parse().map_err(|_| CliError::Input(format!("config key `{key}`: cannot parse `{v}`"))))
            .transpose()
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>> {
        self.text(key)
            .map(|v| {
                v.split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| CliError::Input(format!("config key `{key}`: cannot parse `{}`", s.trim())))
                    })
                    .collect()
            })
            .transpose()
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.text(key).map(str::to_ascii_lowercase).as_deref() {
            None | Some("false" | "no" | "0" | "off") => Ok(false),
            Some("true" | "yes" | "1" | "on") => Ok(true),
            Some(v) => Err(CliError::Input(format!("config key `{key}`: expected true or false, got `{v}`"))),
        }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.text(key).map(PathBuf::from)
    }
}

/// Inputs shared by the commands that analyze a data file.
#[derive(Debug, Clone)]
pub struct DataConfig {
    pub input: PathBuf,
    pub roles: RoleMapping,
    pub output: Option<PathBuf>,
    pub fit: FitOptions<f64>,
    pub env_range: Option<(f64, f64)>,
    pub pomp: bool,
}

/// Model requested by `fit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelChoice {
    Standard,
    Pattern(Pattern, Strength),
}

impl FromStr for ModelChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        if key == "standard" {
            return Ok(ModelChoice::Standard);
        }
        GenerativeModel::ALL
            .into_iter()
            .find_map(|m| match m {
                GenerativeModel::Gxe(p, st) if m.as_str() == key => Some(ModelChoice::Pattern(p, st)),
                _ => None,
            })
            .ok_or_else(|| CliError::Input(format!("unknown model `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Setting {
    Single,
    Multi,
    Both,
}

#[derive(Debug, Clone)]
pub struct SimulateConfig {
    pub scenarios: Vec<Scenario>,
    pub study: gxe_core::StudyOptions,
    pub output: PathBuf,
    pub plot_output: PathBuf,
}

#[derive(Debug, Clone)]
pub struct PompConfig {
    pub input: PathBuf,
    pub columns: Vec<String>,
    pub range: Option<(f64, f64)>,
    pub output: PathBuf,
    pub bounds_output: PathBuf,
}

/// Fully resolved command.
#[derive(Debug, Clone)]
pub enum RunConfig {
    Fit { data: DataConfig, model: ModelChoice },
    Classify { data: DataConfig, bound_mode: BoundMode, include_null_models: bool },
    Ros { data: DataConfig, alpha: Option<f64>, df: DfConvention },
    Simulate(SimulateConfig),
    Pomp(PompConfig),
}

pub fn parse_range(s: &str) -> Result<(f64, f64)> {
    let bad = || CliError::Input(format!("range must look like LO:HI, got `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(CliError::Input(format!("range `{s}` must have finite LO < HI")));
    }
    Ok((a, b))
}

fn parse_df(s: &str) -> Result<DfConvention> {
    match s.trim().to_ascii_lowercase().as_str() {
        "residual" => Ok(DfConvention::Residual),
        "reduced" => Ok(DfConvention::Reduced),
        _ => Err(CliError::Input(format!("df convention must be residual or reduced, got `{s}`"))),
    }
}

fn parse_bound_mode(s: &str) -> Result<BoundMode> {
    match s.trim().to_ascii_lowercase().as_str() {
        "expected" => Ok(BoundMode::Expected),
        "observed" => Ok(BoundMode::Observed),
        _ => Err(CliError::Input(format!("bounds must be expected or observed, got `{s}`"))),
    }
}

fn parse_method(s: &str) -> Result<Method> {
    match s.trim().to_ascii_lowercase().as_str() {
        "competitive" | "competitive_confirmatory" | "competitive-confirmatory" => Ok(Method::CompetitiveConfirmatory),
        "ros" => Ok(Method::RegionsOfSignificance),
        _ => Err(CliError::Input(format!("unknown method `{s}`"))),
    }
}

fn parse_effect(s: &str) -> Result<EffectSize> {
    EffectSize::parse(&s.trim().to_ascii_lowercase())
        .ok_or_else(|| CliError::Input(format!("unknown effect size `{s}`")))
}

fn required<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| CliError::Input(format!("missing required option --{what}")))
}

fn positive(v: Option<f64>, what: &str) -> Result<Option<f64>> {
    match v {
        Some(x) if !(x > 0.0 && x.is_finite()) => Err(CliError::Input(format!("--{what} must be positive, got {x}"))),
        _ => Ok(v),
    }
}

fn fit_options(tol: Option<f64>, max_iter: Option<usize>) -> Result<FitOptions<f64>> {
    let mut fit = FitOptions::default();
    if let Some(t) = positive(tol, "tol")? {
        fit.tol = t;
    }
    if let Some(m) = max_iter {
        if m == 0 {
            return Err(CliError::Input("--max-iter must be at least 1".into()));
        }
        fit.max_iter = m;
    }
    Ok(fit)
}

fn data_config(args: &DataArgs, layer: &Layer) -> Result<DataConfig> {
    let input = required(args.input.clone().or_else(|| layer.path("input")), "input")?;
    let outcome = required(args.outcome.clone().or_else(|| layer.text("outcome").map(String::from)), "outcome")?;
    let genes = required(args.genes.clone().map(Ok).or_else(|| layer.list("genes").transpose()).transpose()?, "genes")?;
    let envs = required(args.envs.clone().map(Ok).or_else(|| layer.list("envs").transpose()).transpose()?, "envs")?;
    let covariates = args
        .covariates
        .clone()
        .map(Ok)
        .or_else(|| layer.list("covariates").transpose())
        .transpose()?
        .unwrap_or_default();
    let roles = RoleMapping::new(outcome, genes, envs, covariates)?;
    let tol = args.tol.map(Ok).or_else(|| layer.parse("tol").transpose()).transpose()?;
    let max_iter = args.max_iter.map(Ok).or_else(|| layer.parse("max-iter").transpose()).transpose()?;
    let env_range = args.env_range.clone().or_else(|| layer.text("env-range").map(String::from));
    Ok(DataConfig {
        input,
        roles,
        output: args.output.clone().or_else(|| layer.path("output")),
        fit: fit_options(tol, max_iter)?,
        env_range: env_range.as_deref().map(parse_range).transpose()?,
        pomp: args.pomp || layer.flag("pomp")?,
    })
}

fn first<T>(flag: Option<T>, layer: Result<Option<T>>) -> Result<Option<T>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => layer,
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}.csv"))
}

fn simulate_config(args: &SimulateArgs, layer: &Layer) -> Result<SimulateConfig> {
    let output = required(args.output.clone().or_else(|| layer.path("output")), "output")?;
    let plot_output =
        args.plot_output.clone().or_else(|| layer.path("plot-output")).unwrap_or_else(|| with_suffix(&output, "_plot"));
    let setting = match first(args.setting.clone(), Ok(layer.text("setting").map(String::from)))?.as_deref() {
        None | Some("both") => Setting::Both,
        Some("single") => Setting::Single,
        Some("multi") => Setting::Multi,
        Some(s) => return Err(CliError::Input(format!("setting must be single, multi or both, got `{s}`"))),
    };
    let sizes = first(args.sample_sizes.clone(), layer.list("sample-sizes"))?.unwrap_or(vec![250, 500, 1000, 2000]);
    let betas = first(args.env_betas.clone(), layer.list("env-betas"))?.unwrap_or(vec![2.0, 4.0]);
    let crossovers = first(args.crossovers.clone(), layer.list("crossovers"))?.unwrap_or(vec![0.25, 0.5]);
    let effects = first(args.effect_sizes.clone(), layer.list("effect-sizes"))?
        .map(|v| v.iter().map(|s| parse_effect(s)).collect::<Result<Vec<_>>>())
        .transpose()?
        .unwrap_or(EffectSize::ALL.to_vec());
    let methods = first(args.methods.clone(), layer.list("methods"))?
        .map(|v| v.iter().map(|s| parse_method(s)).collect::<Result<Vec<_>>>())
        .transpose()?
        .unwrap_or(Method::ALL.to_vec());
    if sizes.is_empty() || betas.is_empty() || crossovers.is_empty() || effects.is_empty() || methods.is_empty() {
        return Err(CliError::Input("simulation grid has an empty dimension".into()));
    }

    let mut scenarios = Vec::new();
    let settings: &[bool] = match setting {
        Setting::Single => &[false],
        Setting::Multi => &[true],
        Setting::Both => &[false, true],
    };
    for &multi in settings {
        for &n in &sizes {
            for &b in &betas {
                for &c in &crossovers {
                    for &es in &effects {
                        scenarios.push(if multi {
                            Scenario::multi(n, b, c, es)
                        } else {
                            Scenario::single(n, b, c, es)
                        });
                    }
                }
            }
        }
    }

    let tol = first(args.tol, layer.parse("tol"))?;
    let max_iter = first(args.max_iter, layer.parse("max-iter"))?;
    fit_options(tol, max_iter)?;
    let alpha = first(args.alpha, layer.parse("alpha"))?;
    if let Some(a) = alpha {
        if !(a > 0.0 && a < 1.0) {
            return Err(CliError::Input(format!("--alpha must lie in (0, 1), got {a}")));
        }
    }
    let jobs = first(args.jobs, layer.parse("jobs"))?
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let study = gxe_core::StudyOptions {
        seed: first(args.seed, layer.parse("seed"))?.unwrap_or(1),
        replicates: first(args.replicates, layer.parse("replicates"))?.unwrap_or(100),
        parallelism: jobs.max(1),
        methods,
        models: GenerativeModel::ALL.to_vec(),
        include_null_models: !(args.no_null_models || layer.flag("no-null-models")?),
        null_gene_effect: first(args.null_gene_effect, layer.parse("null-gene-effect"))?.unwrap_or(BETA_G_NULL),
        alpha,
        df_convention: first(args.df.clone(), Ok(layer.text("df").map(String::from)))?
            .as_deref()
            .map(parse_df)
            .transpose()?
            .unwrap_or_default(),
        tol,
        max_iter,
    };
    Ok(SimulateConfig { scenarios, study, output, plot_output })
}

fn pomp_config(args: &PompArgs, layer: &Layer) -> Result<PompConfig> {
    let output = required(args.output.clone().or_else(|| layer.path("output")), "output")?;
    let bounds_output = args
        .bounds_output
        .clone()
        .or_else(|| layer.path("bounds-output"))
        .unwrap_or_else(|| with_suffix(&output, "_bounds"));
    let range = args.env_range.clone().or_else(|| layer.text("env-range").map(String::from));
    let columns = required(first(args.columns.clone(), layer.list("columns"))?, "columns")?;
    if columns.is_empty() {
        return Err(CliError::Input("--columns is empty".into()));
    }
    Ok(PompConfig {
        input: required(args.input.clone().or_else(|| layer.path("input")), "input")?,
        columns,
        range: range.as_deref().map(parse_range).transpose()?,
        output,
        bounds_output,
    })
}

impl RunConfig {
    /// Merges flags over the config file named by `--config`.
    pub fn resolve(command: &Command) -> Result<Self> {
        match command {
            Command::Fit(a) => {
                let layer = Layer::load(a.data.config.as_deref(), "fit")?;
                Self::fit(a, &layer)
            }
            Command::Classify(a) => {
                let layer = Layer::load(a.data.config.as_deref(), "classify")?;
                Self::classify(a, &layer)
            }
            Command::Ros(a) => {
                let layer = Layer::load(a.data.config.as_deref(), "ros")?;
                Self::ros(a, &layer)
            }
            Command::Simulate(a) => {
                let layer = Layer::load(a.config.as_deref(), "simulate")?;
                Ok(RunConfig::Simulate(simulate_config(a, &layer)?))
            }
            Command::Pomp(a) => {
                let layer = Layer::load(a.config.as_deref(), "pomp")?;
                Ok(RunConfig::Pomp(pomp_config(a, &layer)?))
            }
        }
    }

    pub fn fit(args: &FitArgs, layer: &Layer) -> Result<Self> {
        let model = first(args.model.clone(), Ok(layer.text("model").map(String::from)))?
            .as_deref()
            .map(str::parse)
            .transpose()?
            .unwrap_or(ModelChoice::Standard);
        Ok(RunConfig::Fit { data: data_config(&args.data, layer)?, model })
    }

    pub fn classify(args: &ClassifyArgs, layer: &Layer) -> Result<Self> {
        let bound_mode = first(args.bounds.clone(), Ok(layer.text("bounds").map(String::from)))?
            .as_deref()
            .map(parse_bound_mode)
            .transpose()?
            .unwrap_or_default();
        Ok(RunConfig::Classify {
            data: data_config(&args.data, layer)?,
            bound_mode,
            include_null_models: !(args.no_null_models || layer.flag("no-null-models")?),
        })
    }

    pub fn ros(args: &RosArgs, layer: &Layer) -> Result<Self> {
        let alpha = first(args.alpha, layer.parse("alpha"))?;
        if let Some(a) = alpha {
            if !(a > 0.0 && a < 1.0) {
                return Err(CliError::Input(format!("--alpha must lie in (0, 1), got {a}")));
            }
        }
        let df = first(args.df.clone(), Ok(layer.text("df").map(String::from)))?
            .as_deref()
            .map(parse_df)
            .transpose()?
            .unwrap_or_default();
        Ok(RunConfig::Ros { data: data_config(&args.data, layer)?, alpha, df })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0:100").unwrap(), (0.0, 100.0));
        assert_eq!(parse_range(" -1 : 2.5").unwrap(), (-1.0, 2.5));
        assert!(parse_range("3:1").is_err());
        assert!(parse_range("3").is_err());
    }

    #[test]
    fn model_choices() {
        assert_eq!("standard".parse::<ModelChoice>().unwrap(), ModelChoice::Standard);
        assert_eq!(
            "ds-weak".parse::<ModelChoice>().unwrap(),
            ModelChoice::Pattern(Pattern::DifferentialSusceptibility, Strength::Weak)
        );
        assert!("null".parse::<ModelChoice>().is_err());
    }

    #[test]
    fn default_grid_is_the_figure_grid() {
        let args = SimulateArgs { output: Some("r.csv".into()), setting: Some("single".into()), ..Default::default() };
        let cfg = simulate_config(&args, &Layer::default()).unwrap();
        assert_eq!(cfg.scenarios, Scenario::figure_grid(false));
        assert_eq!(cfg.plot_output, PathBuf::from("r_plot.csv"));
        let args = SimulateArgs { output: Some("r.csv".into()), ..Default::default() };
        assert_eq!(simulate_config(&args, &Layer::default()).unwrap().scenarios.len(), 96);
    }

    #[test]
    fn flags_win_over_config() {
        let layer = Layer::from_pairs([("replicates", "7"), ("seed", "3"), ("max_iter", "9"), ("output", "x.csv")]);
        let args = SimulateArgs { replicates: Some(2), ..Default::default() };
        let cfg = simulate_config(&args, &layer).unwrap();
        assert_eq!(cfg.study.replicates, 2);
        assert_eq!(cfg.study.seed, 3);
        assert_eq!(cfg.study.max_iter, Some(9));
        assert_eq!(cfg.output, PathBuf::from("x.csv"));
    }

    #[test]
    fn config_values_are_validated() {
        let layer = Layer::from_pairs([("replicates", "many"), ("output", "x.csv")]);
        assert!(matches!(simulate_config(&SimulateArgs::default(), &layer), Err(CliError::Input(_))));
        let layer = Layer::from_pairs([("no-null-models", "perhaps"), ("output", "x.csv")]);
        assert!(simulate_config(&SimulateArgs::default(), &layer).is_err());
    }
}
