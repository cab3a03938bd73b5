use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gxe_cli::ingest::ingest_reader;
use gxe_cli::pomp::from_pomp;
use gxe_cli::{pomp_rescale, CliError, RoleMapping};
use gxe_core::classify::REPORT_COLUMNS;
use gxe_core::stats::sample_gaussian;
use gxe_core::{
    classify, fit_competitive_set, fit_legit, generate_dataset, ros_analysis, CompetitiveOptions, Dataset64,
    DfConvention, EffectSize, FitOptions, GenerativeModel, ModelForm, Pattern, Scenario, Strength,
};
use ndarray::{array, Array2};
use tempfile::TempDir;

fn gxe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gxe")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Writes a dataset at full precision with columns y, g1.., e1.., x1...
fn write_dataset(dir: &Path, name: &str, data: &Dataset64) -> PathBuf {
    let path = dir.join(name);
    let mut w = csv::Writer::from_path(&path).unwrap();
    let mut header = vec!["y".to_string()];
    header.extend(data.gene_labels().iter().cloned());
    header.extend(data.env_labels().iter().cloned());
    header.extend(data.covariate_labels().iter().cloned());
    w.write_record(&header).unwrap();
    for i in 0..data.n_obs() {
        let mut row = vec![data.outcome()[i].to_string()];
        row.extend(data.genes().row(i).iter().map(|v| v.to_string()));
        row.extend(data.environments().row(i).iter().map(|v| v.to_string()));
        if let Some(x) = data.covariates() {
            row.extend(x.row(i).iter().map(|v| v.to_string()));
        }
        w.write_record(&row).unwrap();
    }
    w.flush().unwrap();
    path
}

fn single_data(model: GenerativeModel, n: usize, seed: u64) -> Dataset64 {
    generate_dataset::<f64>(&Scenario::single(n, 2.0, 0.5, EffectSize::Large), model, seed).unwrap().0
}

fn roles(genes: &[&str], envs: &[&str]) -> RoleMapping {
    RoleMapping::new(
        "y".into(),
        genes.iter().map(|s| s.to_string()).collect(),
        envs.iter().map(|s| s.to_string()).collect(),
        vec![],
    )
    .unwrap()
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_path(path).unwrap();
    r.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn ingest_small_file() {
    let text = "y,g1,e1\n1.5,0,0.2\n2,1,0.4\n3,1,0.9\n";
    let got = ingest_reader(text.as_bytes(), &roles(&["g1"], &["e1"])).unwrap();
    assert_eq!((got.data.n_obs(), got.data.n_genes(), got.data.n_envs()), (3, 1, 1));
    assert_eq!(got.rows_dropped, 0);
    assert_eq!(got.data.outcome().to_vec(), vec![1.5, 2.0, 3.0]);
    assert_eq!(got.data.gene_labels(), ["g1"]);
}

#[test]
fn blank_cells_drop_rows_with_a_warning() {
    let text = "y,g1,e1,unused\n1.5,0,0.2,\n2,,0.4,x\n3,1,NA,1\n4,1,0.5,\n";
    let got = ingest_reader(text.as_bytes(), &roles(&["g1"], &["e1"])).unwrap();
    assert_eq!(got.data.n_obs(), 2);
    assert_eq!((got.rows_read, got.rows_dropped), (4, 2));

    let dir = TempDir::new().unwrap();
    let data = single_data(GenerativeModel::Null, 200, 1);
    let path = write_dataset(dir.path(), "d.csv", &data);
    let mut text = fs::read_to_string(&path).unwrap();
    text = text.replacen("\n", "\n,0,0.5\n", 1).replacen(",0,0.5\n", ",,0.5\n", 1);
    fs::write(&path, text).unwrap();
    let o = gxe(&["ros", "--input", path.to_str().unwrap(), "--outcome", "y", "--genes", "g1", "--envs", "e1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("dropped 1 of 201 rows"), "{}", stderr(&o));
}

#[test]
fn input_errors_are_reported_on_one_line() {
    let err = ingest_reader("y,g1,e1\n1,0,0\n2,abc,1\n".as_bytes(), &roles(&["g1"], &["e1"])).unwrap_err();
    assert!(matches!(&err, CliError::Input(m) if m.contains("line 3") && m.contains("`g1`") && m.contains("abc")));
    let err = ingest_reader("y,g1\n1,0\n".as_bytes(), &roles(&["g1"], &["e1"])).unwrap_err();
    assert!(err.to_string().contains("`e1` not found"));
    assert!(RoleMapping::new("y".into(), vec!["g".into()], vec!["g".into()], vec![]).is_err());
    let err = ingest_reader("y,g1,e1\n,0,0\n".as_bytes(), &roles(&["g1"], &["e1"])).unwrap_err();
    assert!(err.to_string().contains("no complete rows"));

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "y,g1,e1\n1,0,0\n2,abc,1\n").unwrap();
    let o = gxe(&["classify", "--input", path.to_str().unwrap(), "--outcome", "y", "--genes", "g1", "--envs", "e1"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert_eq!(e.lines().count(), 1, "{e}");
    assert!(e.starts_with("error[input]: line 3, column `g1`"), "{e}");

    let o = gxe(&["classify", "--input", "/nonexistent/x.csv", "--outcome", "y", "--genes", "g1", "--envs", "e1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).starts_with("error[io]:"));

    let o = gxe(&["classify", "--input", path.to_str().unwrap(), "--genes", "g1", "--envs", "e1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--outcome"));
}

#[test]
fn fit_failures_exit_with_code_three() {
    let dir = TempDir::new().unwrap();
    let data = single_data(GenerativeModel::Null, 100, 2);
    let flat =
        Dataset64::new(data.outcome().to_owned(), Array2::zeros((100, 1)), data.environments().clone(), None).unwrap();
    let path = write_dataset(dir.path(), "flat.csv", &flat);
    let o = gxe(&["fit", "--input", path.to_str().unwrap(), "--outcome", "y", "--genes", "g1", "--envs", "e1"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).starts_with("error[fit]:"));
}

#[test]
fn pomp_examples() {
    let labels = vec!["a".to_string(), "b".to_string()];
    let x = array![[0.0, 10.0], [5.0, 50.0], [10.0, 100.0]];
    let (y, scale) = pomp_rescale(&x, &labels, &[None, Some((0.0, 100.0))]).unwrap();
    assert_eq!(y.column(0).to_vec(), vec![0.0, 50.0, 100.0]);
    assert_eq!(y.column(1), x.column(1));
    assert_eq!(scale.bounds, vec![(0.0, 10.0), (0.0, 100.0)]);

    let z = sample_gaussian::<f64>(3.0, 200, 4).unwrap().into_shape_with_order((100, 2)).unwrap();
    let (y, scale) = pomp_rescale(&z, &labels, &[None, None]).unwrap();
    let bad: Vec<f64> = y.iter().copied().filter(|v| !(0.0..=100.0).contains(v)).collect();
    assert!(bad.is_empty(), "{bad:?} {:?}", scale.bounds);
    let back = scale.inverse(&y);
    assert!(back.iter().zip(z.iter()).all(|(a, b)| (a - b).abs() < 1e-10));
    assert!((from_pomp(50.0, (2.0, 4.0)) - 3.0).abs() < 1e-15);

    let constant = array![[1.0], [1.0]];
    let err = pomp_rescale(&constant, &["flat".to_string()], &[None]).unwrap_err();
    assert!(err.to_string().contains("`flat`"));
    assert!(pomp_rescale(&constant, &["flat".to_string()], &[Some((0.0, 2.0))]).is_ok());
    assert!(pomp_rescale(&array![[5.0], [1.0]], &["out".to_string()], &[Some((0.0, 2.0))]).is_err());
}

#[test]
fn classify_report_matches_the_library() {
    let dir = TempDir::new().unwrap();
    let model = GenerativeModel::Gxe(Pattern::DifferentialSusceptibility, Strength::Weak);
    let data = single_data(model, 1000, 3);
    let path = write_dataset(dir.path(), "d.csv", &data);
    let report = dir.path().join("bic.csv");
    let o = gxe(&[
        "classify",
        "--input",
        path.to_str().unwrap(),
        "--outcome",
        "y",
        "--genes",
        "g1",
        "--envs",
        "e1",
        "--env-range",
        "0:1",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);

    // re-ingested data gives the in-memory result
    let opts = CompetitiveOptions { env_bounds: Some((0.0, 1.0)), ..CompetitiveOptions::default() };
    let lib = classify(&fit_competitive_set(&data, &opts).unwrap(), &data).unwrap();
    assert!(text.contains(&format!("label: {}", lib.label)), "{text}");
    assert!(text.contains("fixed crossovers at 0 and 1 (expected bounds)"));
    let header = text.lines().find(|l| l.starts_with("model")).unwrap();
    let cols: Vec<&str> = header.split("  ").map(str::trim).filter(|s| !s.is_empty()).collect();
    assert_eq!(cols[1..], REPORT_COLUMNS);
    let rows = read_csv(&report);
    assert_eq!(rows.len(), 1 + lib.table.len());
    for (row, lib_row) in rows[1..].iter().zip(&lib.table) {
        assert_eq!(row[0], lib_row.model.to_string());
        let bic: f64 = row[1].parse().unwrap();
        assert!((bic - lib_row.bic).abs() <= 1e-10 * lib_row.bic.abs());
    }
    if lib.proportion_affected.is_some() {
        assert!(text.contains("proportion affected"));
    }
}

#[test]
fn intercept_only_winner_is_reported_as_no_evidence() {
    let dir = TempDir::new().unwrap();
    let base = single_data(GenerativeModel::Null, 60, 5);
    let y = sample_gaussian::<f64>(1.0, 60, 6).unwrap();
    let data = base.with_outcome(y).unwrap();
    let path = write_dataset(dir.path(), "noise.csv", &data);
    let o = gxe(&["classify", "--input", path.to_str().unwrap(), "--outcome", "y", "--genes", "g1", "--envs", "e1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("label: no evidence of G×E"), "{text}");
    assert!(text.contains("chosen model: Intercept only"), "{text}");
    let table_rows = text.lines().skip_while(|l| !l.starts_with("model")).skip(1).take_while(|l| !l.is_empty()).count();
    assert_eq!(table_rows, 10);

    let o = gxe(&[
        "classify",
        "--input",
        path.to_str().unwrap(),
        "--outcome",
        "y",
        "--genes",
        "g1",
        "--envs",
        "e1",
        "--no-null-models",
    ]);
    assert!(!stdout(&o).contains("no evidence"));
}

#[test]
fn fit_and_ros_match_the_library() {
    let dir = TempDir::new().unwrap();
    let model = GenerativeModel::Gxe(Pattern::DiathesisStress, Strength::Weak);
    let data = single_data(model, 800, 7);
    let path = write_dataset(dir.path(), "d.csv", &data);
    let out = dir.path().join("fit.csv");
    let args = ["--input", path.to_str().unwrap(), "--outcome", "y", "--genes", "g1", "--envs", "e1"];
    let o = gxe(&[&["fit"][..], &args, &["--output", out.to_str().unwrap()]].concat());
    assert!(o.status.success(), "{}", stderr(&o));
    let lib = fit_legit(&data, ModelForm::standard(), &FitOptions::default()).unwrap();
    let rows = read_csv(&out);
    let est = |name: &str| -> f64 { rows.iter().find(|r| r[1] == name).unwrap()[2].parse().unwrap() };
    assert!((est("intercept") - lib.beta0).abs() < 1e-10);
    assert!((est("E×G") - lib.beta_eg).abs() < 1e-10);
    assert!((est("r_squared") - lib.diagnostics.r_squared).abs() < 1e-12);
    assert!(stdout(&o).contains("free parameters: 4"));

    let o = gxe(&[&["fit"][..], &args, &["--model", "ds_weak"]].concat());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("crossover:") && stdout(&o).contains("95% interval"));

    let out = dir.path().join("ros.csv");
    let o = gxe(&[&["ros"][..], &args, &["--output", out.to_str().unwrap()]].concat());
    assert!(o.status.success(), "{}", stderr(&o));
    let r = ros_analysis(&lib, None, DfConvention::Residual).unwrap();
    let text = stdout(&o);
    for key in ["L: ", "U: ", "alpha: 0.05", &format!("df: {}", r.degrees_of_freedom), "label: "] {
        assert!(text.contains(key), "{key} missing in {text}");
    }
    let rows = read_csv(&out);
    let get = |k: &str| rows.iter().find(|r| r[0] == k).unwrap()[1].clone();
    assert_eq!(get("label"), r.label.as_str());
    if let Some(l) = r.lower_bound {
        assert!((get("lower_bound").parse::<f64>().unwrap() - l).abs() < 1e-12);
    }
    let o = gxe(&[&["ros"][..], &args, &["--alpha", "0.01", "--df", "reduced"]].concat());
    assert!(stdout(&o).contains("alpha: 0.01"));
    assert!(stdout(&o).contains(&format!("df: {}", r.degrees_of_freedom - 1)));
}

#[test]
fn pomp_command_and_flag() {
    let dir = TempDir::new().unwrap();
    let data = single_data(GenerativeModel::Gxe(Pattern::VantageSensitivity, Strength::Weak), 300, 8);
    let scaled = Dataset64::new(
        data.outcome().to_owned(),
        data.genes().clone(),
        data.environments().mapv(|v| 1.0 + 4.0 * v),
        None,
    )
    .unwrap();
    let path = write_dataset(dir.path(), "d.csv", &scaled);
    let out = dir.path().join("pomp.csv");
    let o = gxe(&[
        "pomp",
        "--input",
        path.to_str().unwrap(),
        "--columns",
        "e1",
        "--env-range",
        "1:5",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = read_csv(&out);
    assert_eq!(rows[0], ["y", "g1", "e1"]);
    for (i, row) in rows[1..].iter().enumerate() {
        let v: f64 = row[2].parse().unwrap();
        assert!((v - 100.0 * data.environments()[[i, 0]]).abs() < 1e-9);
        assert_eq!(row[0], scaled.outcome()[i].to_string());
    }
    let bounds = read_csv(&dir.path().join("pomp_bounds.csv"));
    assert_eq!(bounds[1], ["e1", "1", "5", "theoretical"]);

    let o = gxe(&[
        "classify",
        "--input",
        path.to_str().unwrap(),
        "--outcome",
        "y",
        "--genes",
        "g1",
        "--envs",
        "e1",
        "--pomp",
        "--env-range",
        "1:5",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("fixed crossovers at 0 and 100 (expected bounds)"), "{}", stdout(&o));
    assert!(stdout(&o).contains("rescaled e1 to 0-100 from [1, 5] (theoretical)"));
}

fn simulate(dir: &Path, name: &str, extra: &[&str]) -> (Output, PathBuf) {
    let out = dir.join(name);
    let o = gxe(&[&["simulate", "--output", out.to_str().unwrap()][..], extra].concat());
    (o, out)
}

#[test]
fn simulate_is_deterministic_across_jobs() {
    let dir = TempDir::new().unwrap();
    let grid = [
        "--setting",
        "single",
        "--sample-sizes",
        "250",
        "--env-betas",
        "2",
        "--crossovers",
        "0.5",
        "--effect-sizes",
        "large",
    ];
    let (a, pa) =
        simulate(dir.path(), "a.csv", &[&grid[..], &["--replicates", "3", "--seed", "5", "--jobs", "1"]].concat());
    let (b, pb) =
        simulate(dir.path(), "b.csv", &[&grid[..], &["--replicates", "3", "--seed", "5", "--jobs", "2"]].concat());
    assert!(a.status.success() && b.status.success(), "{}", stderr(&a));
    assert_eq!(fs::read(&pa).unwrap(), fs::read(&pb).unwrap());
    assert_eq!(fs::read(dir.path().join("a_plot.csv")).unwrap(), fs::read(dir.path().join("b_plot.csv")).unwrap());
    let rows = read_csv(&pa);
    assert_eq!(rows.len(), 3);
    let acc: f64 = rows[1][9].parse().unwrap();
    assert!((0.0..=1.0).contains(&acc));
}

#[test]
fn simulate_figure_grid_structure_from_config() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("study.ini");
    fs::write(
        &cfg,
        "seed = 11\n\n[simulate]\nsetting = single\nreplicates = 5\nmethods = competitive_confirmatory, ros\nmax_iter = 50\n",
    )
    .unwrap();
    // the flag overrides the configured replicate count
    let (o, path) = simulate(dir.path(), "grid.csv", &["--config", cfg.to_str().unwrap(), "--replicates", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = read_csv(&path);
    assert_eq!(rows.len(), 1 + 4 * 3 * 4 * 2);
    let col = |name: &str| rows[0].iter().position(|h| h == name).unwrap();
    let (n, es, method, reps) = (col("sample_size"), col("effect_size"), col("method"), col("replicates"));
    assert!(rows[1..].iter().all(|r| r[reps] == "1"));
    let mut cells = std::collections::HashSet::new();
    for r in &rows[1..] {
        cells.insert((r[n].clone(), r[es].clone(), r[method].clone()));
    }
    assert_eq!(cells.len(), 4 * 3 * 2);
    let plot = read_csv(&dir.path().join("grid_plot.csv"));
    assert_eq!(plot.len(), 1 + 96 * 2);
}

#[test]
fn bad_options_exit_with_code_two() {
    let o = gxe(&["simulate", "--output", "/tmp/x.csv", "--effect-sizes", "huge"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[input]: unknown effect size"));
    let o = gxe(&["ros", "--input", "x.csv", "--outcome", "y", "--genes", "g", "--envs", "e", "--alpha", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o =
        gxe(&["classify", "--input", "x.csv", "--outcome", "y", "--genes", "g", "--envs", "e", "--bounds", "maybe"]);
    assert_eq!(o.status.code(), Some(2));
    let o = gxe(&[
        "simulate",
        "--output",
        "/nonexistent/dir/x.csv",
        "--setting",
        "single",
        "--sample-sizes",
        "250",
        "--env-betas",
        "2",
        "--crossovers",
        "0.5",
        "--effect-sizes",
        "large",
        "--replicates",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}
