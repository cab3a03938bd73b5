use std::io::Write;
use std::path::Path;

use gxe_core::classify::{format_interval, format_number, report_cells, NumberStyle, REPORT_COLUMNS};
use gxe_core::ros::SignificanceRegion;
use gxe_core::sim::{export_plot_table, export_results};
use gxe_core::{
    classify, crossover_interval, fit_competitive_set, fit_legit, interaction_f_ratio, ros_analysis, run_study,
    BoundMode, CompetitiveOptions, Dataset64, DfConvention, LegitModel64, ModelForm, Term,
};

use crate::config::{DataConfig, ModelChoice, PompConfig, RunConfig, SimulateConfig};
use crate::error::{CliError, Result};
use crate::ingest::{ingest_csv, is_missing, Table};
use crate::pomp::{column_bounds, pomp_rescale, to_pomp, PompScale};

const STYLE: NumberStyle = NumberStyle::Significant(6);

/// Number for human-readable reports.
pub fn num(x: f64) -> String {
    format_number(x, STYLE)
}

/// Aligned text table: first column left-aligned, the rest right-aligned.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (j, cell) in cells.iter().enumerate() {
            let pad = width[j] - cell.chars().count();
            if j == 0 {
                s.push_str(cell);
                s.push_str(&" ".repeat(pad));
            } else {
                s.push_str("  ");
                s.push_str(&" ".repeat(pad));
                s.push_str(cell);
            }
        }
        s.trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    for row in rows {
        out.push_str(&line((0..cols).map(|j| row.get(j).map_or("", String::as_str)).collect()));
        out.push('\n');
    }
    out
}

/// Dataset ready for analysis, with the crossover bounds implied by its scale.
pub struct Prepared {
    pub data: Dataset64,
    pub env_bounds: Option<(f64, f64)>,
    pub pomp: Option<PompScale>,
}

/// Reads the input and applies the declared rescaling, if any.
pub fn prepare(cfg: &DataConfig, err: &mut dyn Write) -> Result<Prepared> {
    let ingested = ingest_csv(&cfg.input, &cfg.roles)?;
    if ingested.rows_dropped > 0 {
        writeln!(err, "warning: dropped {} of {} rows with missing values", ingested.rows_dropped, ingested.rows_read)?;
    }
    let data = ingested.data;
    if !cfg.pomp {
        return Ok(Prepared { data, env_bounds: cfg.env_range, pomp: None });
    }
    let theoretical = vec![cfg.env_range; data.n_envs()];
    let (envs, scale) = pomp_rescale(data.environments(), data.env_labels(), &theoretical)?;
    let data = Dataset64::with_labels(
        data.outcome().to_owned(),
        data.genes().clone(),
        envs,
        data.covariates().cloned(),
        data.gene_labels().to_vec(),
        data.env_labels().to_vec(),
        data.covariate_labels().to_vec(),
    )?;
    Ok(Prepared { data, env_bounds: Some((0.0, 100.0)), pomp: Some(scale) })
}

fn describe(data: &Dataset64) -> String {
    let plural = |n: usize, one: &str, many: &str| format!("{n} {}", if n == 1 { one } else { many });
    let mut s = format!(
        "n = {}, {}, {}",
        data.n_obs(),
        plural(data.n_genes(), "gene", "genes"),
        plural(data.n_envs(), "environment", "environments")
    );
    if data.n_covariates() > 0 {
        s.push_str(&format!(", {}", plural(data.n_covariates(), "covariate", "covariates")));
    }
    s
}

fn write_pomp_note(out: &mut dyn Write, scale: &Option<PompScale>) -> Result<()> {
    if let Some(scale) = scale {
        for ((label, (lo, hi)), source) in scale.labels.iter().zip(&scale.bounds).zip(&scale.sources) {
            writeln!(out, "rescaled {label} to 0-100 from [{}, {}] ({source})", num(*lo), num(*hi))?;
        }
    }
    Ok(())
}

fn term_name(term: Term, data: &Dataset64) -> String {
    match term {
        Term::Intercept => "intercept".into(),
        Term::Environment => "E".into(),
        Term::Gene => "G".into(),
        Term::Interaction => "E×G".into(),
        Term::Covariate(i) => data.covariate_labels()[i].clone(),
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    csv::Writer::from_path(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn competitive_options(
    p: &Prepared,
    cfg: &DataConfig,
    include_null_models: bool,
    mode: BoundMode,
) -> CompetitiveOptions<f64> {
    CompetitiveOptions {
        include_null_models,
        bound_mode: mode,
        env_bounds: p.env_bounds,
        fit: cfg.fit.clone(),
        ..CompetitiveOptions::default()
    }
}

fn fitted_model(p: &Prepared, cfg: &DataConfig, model: ModelChoice) -> Result<(LegitModel64, String)> {
    match model {
        ModelChoice::Standard => Ok((fit_legit(&p.data, ModelForm::standard(), &cfg.fit)?, "standard".into())),
        ModelChoice::Pattern(pattern, strength) => {
            let set = fit_competitive_set(&p.data, &competitive_options(p, cfg, false, BoundMode::Expected))?;
            let member = set
                .gxe
                .iter()
                .find(|m| m.pattern == pattern && m.strength == strength)
                .expect("every pattern is fitted");
            let name = gxe_core::ModelKey::Gxe(pattern, strength).to_string();
            Ok((member.fit.clone()?, name))
        }
    }
}

fn run_fit(cfg: &DataConfig, model: ModelChoice, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let p = prepare(cfg, err)?;
    let (m, name) = fitted_model(&p, cfg, model)?;
    let data = &p.data;
    writeln!(out, "model: {name} ({})", describe(data))?;
    write_pomp_note(out, &p.pomp)?;
    writeln!(out)?;

    let coefs = m.main_coefficients();
    let rows: Vec<Vec<String>> = coefs
        .iter()
        .map(|c| vec![term_name(c.term, data), num(c.estimate), num(c.std_error), num(c.estimate / c.std_error)])
        .collect();
    write!(out, "{}", render_table(&["coefficient", "estimate", "std. error", "t"], &rows))?;
    writeln!(out, "(standard errors are conditional on the fitted weights)")?;
    let interval = match m.form.crossover {
        gxe_core::Crossover::Free => Some(crossover_interval(&m, 0.95)?),
        _ => None,
    };
    if let Some(c) = m.crossover {
        let mut line = format!("crossover: {}", num(c));
        if let Some(se) = m.crossover_se {
            line.push_str(&format!(", std. error {}", num(se)));
        }
        if let Some((lo, hi)) = interval {
            line.push_str(&format!(", 95% interval {}", format_interval(lo, hi, STYLE)));
        }
        writeln!(out, "{line}")?;
    }
    writeln!(out)?;
    let weights = |labels: &[String], w: &ndarray::Array1<f64>| -> Vec<Vec<String>> {
        labels.iter().zip(w).map(|(l, v)| vec![l.clone(), num(*v)]).collect()
    };
    write!(out, "{}", render_table(&["gene", "weight"], &weights(data.gene_labels(), &m.gene_weights)))?;
    writeln!(out)?;
    write!(out, "{}", render_table(&["environment", "weight"], &weights(data.env_labels(), &m.env_weights)))?;
    writeln!(out)?;
    let d = &m.diagnostics;
    writeln!(
        out,
        "R² {}  RSS {}  log-likelihood {}  AIC {}  BIC {}",
        num(d.r_squared),
        num(d.rss),
        num(d.log_likelihood),
        num(d.aic),
        num(d.bic)
    )?;
    writeln!(out, "free parameters: {}", m.n_free_params)?;
    writeln!(out, "iterations: {} ({})", m.iterations_used, if m.converged { "converged" } else { "not converged" })?;
    if !m.converged {
        writeln!(err, "warning: the fit stopped at the iteration limit before converging")?;
    }

    if let Some(path) = &cfg.output {
        let mut w = csv_writer(path)?;
        w.write_record(["kind", "name", "estimate", "std_error"])?;
        for c in &coefs {
            w.write_record([
                "coefficient",
                &term_name(c.term, data),
                &c.estimate.to_string(),
                &c.std_error.to_string(),
            ])?;
        }
        if let Some(c) = m.crossover {
            w.write_record(["crossover", "c", &c.to_string(), &opt(m.crossover_se)])?;
        }
        if let Some((lo, hi)) = interval {
            w.write_record(["crossover", "lower_95", &lo.to_string(), ""])?;
            w.write_record(["crossover", "upper_95", &hi.to_string(), ""])?;
        }
        for (l, v) in data.gene_labels().iter().zip(&m.gene_weights) {
            w.write_record(["gene_weight", l, &v.to_string(), ""])?;
        }
        for (l, v) in data.env_labels().iter().zip(&m.env_weights) {
            w.write_record(["env_weight", l, &v.to_string(), ""])?;
        }
        for (name, v) in [
            ("r_squared", d.r_squared),
            ("rss", d.rss),
            ("log_likelihood", d.log_likelihood),
            ("aic", d.aic),
            ("bic", d.bic),
            ("n_free_params", m.n_free_params as f64),
            ("iterations", m.iterations_used as f64),
        ] {
            w.write_record(["statistic", name, &v.to_string(), ""])?;
        }
        w.flush()?;
    }
    Ok(())
}

fn run_classify(
    cfg: &DataConfig,
    bound_mode: BoundMode,
    include_null_models: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let p = prepare(cfg, err)?;
    let data = &p.data;
    let set = fit_competitive_set(data, &competitive_options(&p, cfg, include_null_models, bound_mode))?;
    let result = classify(&set, data)?;

    writeln!(out, "competitive-confirmatory test ({})", describe(data))?;
    write_pomp_note(out, &p.pomp)?;
    let mode = match bound_mode {
        BoundMode::Expected => "expected",
        BoundMode::Observed => "observed",
    };
    writeln!(out, "fixed crossovers at {} and {} ({mode} bounds)", num(set.c_low), num(set.c_high))?;
    writeln!(out)?;
    let cells = report_cells(&result.table, STYLE);
    let rows: Vec<Vec<String>> = cells.iter().map(|c| c.to_vec()).collect();
    let mut header = vec!["model"];
    header.extend(REPORT_COLUMNS);
    write!(out, "{}", render_table(&header, &rows))?;
    writeln!(out)?;
    writeln!(out, "label: {}", result.label)?;
    writeln!(out, "chosen model: {}", result.chosen_model)?;
    if result.chosen_model != result.best_model {
        writeln!(out, "lowest BIC: {} (crossover outside the observable range)", result.best_model)?;
    }
    if let Some(c) = result.crossover {
        writeln!(out, "crossover: {}", num(c))?;
    }
    if let Some(pa) = result.proportion_affected {
        writeln!(out, "proportion affected: {}", num(pa))?;
    }
    for (key, e) in set.failures() {
        writeln!(err, "warning: {key} could not be fitted: {e}")?;
    }
    match interaction_f_ratio(data, &cfg.fit) {
        Ok(f) if f < 1.0 => writeln!(
            err,
            "warning: interaction F-ratio is {} (< 1); free crossover estimates may be unreliable",
            num(f)
        )?,
        Ok(_) => {}
        Err(e) => writeln!(err, "warning: interaction F-ratio unavailable: {e}")?,
    }

    if let Some(path) = &cfg.output {
        let mut w = csv_writer(path)?;
        w.write_record([
            "model",
            "bic",
            "n_params",
            "crossover",
            "crossover_lower",
            "crossover_upper",
            "within_observable_range",
        ])?;
        for r in &result.table {
            w.write_record([
                r.model.to_string(),
                r.bic.to_string(),
                r.n_params.to_string(),
                opt(r.crossover),
                opt(r.interval.map(|i| i.0)),
                opt(r.interval.map(|i| i.1)),
                r.within_observable_range.map(|b| b.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
    }
    Ok(())
}

fn region_text(r: SignificanceRegion) -> &'static str {
    match r {
        SignificanceRegion::Outside => "significant outside [L, U]",
        SignificanceRegion::Inside => "significant only between L and U",
        SignificanceRegion::Everywhere => "significant everywhere",
        SignificanceRegion::Nowhere => "significant nowhere",
    }
}

fn run_ros(
    cfg: &DataConfig,
    alpha: Option<f64>,
    df: DfConvention,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let p = prepare(cfg, err)?;
    let m = fit_legit(&p.data, ModelForm::standard(), &cfg.fit)?;
    let r = ros_analysis(&m, alpha, df)?;
    let bound = |b: Option<f64>| b.map(num).unwrap_or_else(|| "none".into());
    writeln!(out, "regions of significance ({})", describe(&p.data))?;
    write_pomp_note(out, &p.pomp)?;
    writeln!(out, "L: {}", bound(r.lower_bound))?;
    writeln!(out, "U: {}", bound(r.upper_bound))?;
    writeln!(out, "alpha: {}", num(r.alpha))?;
    writeln!(out, "df: {}", r.degrees_of_freedom)?;
    writeln!(out, "critical t: {}", num(r.t_crit))?;
    writeln!(out, "region: {}", region_text(r.region))?;
    writeln!(out, "observable range: [{}, {}]", num(r.observable_range.0), num(r.observable_range.1))?;
    writeln!(out, "label: {}", r.label)?;

    if let Some(path) = &cfg.output {
        let mut w = csv_writer(path)?;
        w.write_record(["key", "value"])?;
        for (k, v) in [
            ("lower_bound", opt(r.lower_bound)),
            ("upper_bound", opt(r.upper_bound)),
            ("alpha", r.alpha.to_string()),
            ("df", r.degrees_of_freedom.to_string()),
            ("t_critical", r.t_crit.to_string()),
            ("region", format!("{:?}", r.region).to_lowercase()),
            ("observable_min", r.observable_range.0.to_string()),
            ("observable_max", r.observable_range.1.to_string()),
            ("label", r.label.as_str().to_string()),
        ] {
            w.write_record([k, v.as_str()])?;
        }
        w.flush()?;
    }
    Ok(())
}

fn run_simulate(cfg: &SimulateConfig, out: &mut dyn Write) -> Result<()> {
    let res = run_study::<f64>(&cfg.scenarios, &cfg.study)?;
    export_results(&res.tables, &cfg.output)?;
    export_plot_table(&res.tables, &cfg.plot_output)?;
    let rows: Vec<Vec<String>> = res
        .tables
        .iter()
        .map(|t| {
            vec![
                t.scenario.to_string(),
                t.method.as_str().to_string(),
                t.accuracy().map(num).unwrap_or_default(),
                t.false_positive_rate().map(num).unwrap_or_default(),
            ]
        })
        .collect();
    write!(out, "{}", render_table(&["scenario", "method", "accuracy", "false positive rate"], &rows))?;
    writeln!(
        out,
        "{} scenarios, {} replicates per model, seed {}; {} fits, max |Σ|w| − 1| {}, max R² decrease {}",
        cfg.scenarios.len(),
        cfg.study.replicates,
        cfg.study.seed,
        res.health.fits,
        num(res.health.max_constraint_error),
        num(res.health.max_r2_decrease)
    )?;
    for (msg, count) in &res.failures {
        writeln!(out, "failed {count}×: {msg}")?;
    }
    writeln!(out, "results: {}", cfg.output.display())?;
    writeln!(out, "plot table: {}", cfg.plot_output.display())?;
    Ok(())
}

fn run_pomp(cfg: &PompConfig, out: &mut dyn Write) -> Result<()> {
    let mut table = Table::read(&cfg.input)?;
    let mut scale = PompScale { labels: Vec::new(), bounds: Vec::new(), sources: Vec::new() };
    for name in &cfg.columns {
        let j = table.column_index(name)?;
        let mut values = Vec::with_capacity(table.rows.len());
        for (i, row) in table.rows.iter().enumerate() {
            let cell = row.get(j).map_or("", String::as_str);
            if is_missing(cell) {
                values.push(None);
                continue;
            }
            let v: f64 = cell.parse().map_err(|_| {
                CliError::Input(format!("line {}, column `{name}`: cannot parse `{cell}` as a number", i + 2))
            })?;
            values.push(Some(v));
        }
        let (bounds, source) = column_bounds(values.iter().flatten().copied(), name, cfg.range)?;
        for (row, v) in table.rows.iter_mut().zip(&values) {
            if let Some(v) = v {
                row[j] = to_pomp(*v, bounds).to_string();
            }
        }
        scale.labels.push(name.clone());
        scale.bounds.push(bounds);
        scale.sources.push(source);
    }
    table.write(&cfg.output)?;
    scale.write(&cfg.bounds_output)?;
    write_pomp_note(out, &Some(scale))?;
    writeln!(out, "wrote {} rows to {}", table.rows.len(), cfg.output.display())?;
    writeln!(out, "bounds: {}", cfg.bounds_output.display())?;
    Ok(())
}

/// Executes a resolved command, writing the report to `out` and warnings to `err`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match config {
        RunConfig::Fit { data, model } => run_fit(data, *model, out, err),
        RunConfig::Classify { data, bound_mode, include_null_models } => {
            run_classify(data, *bound_mode, *include_null_models, out, err)
        }
        RunConfig::Ros { data, alpha, df } => run_ros(data, *alpha, *df, out, err),
        RunConfig::Simulate(cfg) => run_simulate(cfg, out),
        RunConfig::Pomp(cfg) => run_pomp(cfg, out),
    }
}
