use std::collections::HashSet;
use std::path::Path;

use gxe_core::Dataset64;
use ndarray::{Array1, Array2};

use crate::error::{CliError, Result};

/// Which input columns play which role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleMapping {
    pub outcome: String,
    pub genes: Vec<String>,
    pub envs: Vec<String>,
    pub covariates: Vec<String>,
}

impl RoleMapping {
    /// Checks that every role is filled and no column has two roles.
    pub fn new(outcome: String, genes: Vec<String>, envs: Vec<String>, covariates: Vec<String>) -> Result<Self> {
        if outcome.is_empty() {
            return Err(CliError::Input("an outcome column is required".into()));
        }
        if genes.is_empty() {
            return Err(CliError::Input("at least one gene column is required".into()));
        }
        if envs.is_empty() {
            return Err(CliError::Input("at least one environment column is required".into()));
        }
        let mut seen = HashSet::new();
        for name in std::iter::once(&outcome).chain(&genes).chain(&envs).chain(&covariates) {
            if !seen.insert(name.as_str()) {
                return Err(CliError::Input(format!("column `{name}` is assigned to more than one role")));
            }
        }
        Ok(Self { outcome, genes, envs, covariates })
    }

    fn columns(&self) -> impl Iterator<Item = &String> {
        std::iter::once(&self.outcome).chain(&self.genes).chain(&self.envs).chain(&self.covariates)
    }
}

/// Dataset read from a file and how many rows were dropped for missing values.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub data: Dataset64,
    pub rows_read: usize,
    pub rows_dropped: usize,
}

/// Empty cells and `NA`/`NaN` markers count as missing.
pub fn is_missing(cell: &str) -> bool {
    let c = cell.trim();
    c.is_empty() || c.eq_ignore_ascii_case("na") || c.eq_ignore_ascii_case("nan")
}

/// Reads a header-first CSV file, keeping complete rows of the mapped columns.
pub fn ingest_csv(path: &Path, roles: &RoleMapping) -> Result<Ingested> {
    let file = std::fs::File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    ingest_reader(file, roles)
}

pub fn ingest_reader<R: std::io::Read>(reader: R, roles: &RoleMapping) -> Result<Ingested> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header = rdr.headers()?.clone();
    let index: Vec<usize> = roles
        .columns()
        .map(|name| {
            header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| CliError::Input(format!("column `{name}` not found in header")))
        })
        .collect::<Result<_>>()?;
    let names: Vec<&String> = roles.columns().collect();

    let mut values: Vec<f64> = Vec::new();
    let (mut rows_read, mut kept) = (0, 0);
    let mut row = Vec::with_capacity(index.len());
    for record in rdr.records() {
        let record = record?;
        rows_read += 1;
        let line = record.position().map_or(rows_read + 1, |p| p.line() as usize);
        row.clear();
        let mut complete = true;
        for (&i, name) in index.iter().zip(&names) {
            let cell = record.get(i).unwrap_or("");
            if is_missing(cell) {
                complete = false;
                break;
            }
            let v: f64 = cell.parse().map_err(|_| {
                CliError::Input(format!("line {line}, column `{name}`: cannot parse `{cell}` as a number"))
            })?;
            if !v.is_finite() {
                return Err(CliError::Input(format!("line {line}, column `{name}`: value `{cell}` is not finite")));
            }
            row.push(v);
        }
        if complete {
            values.extend_from_slice(&row);
            kept += 1;
        }
    }
    if kept == 0 {
        return Err(CliError::Input(format!("no complete rows among {rows_read} read")));
    }

    let width = index.len();
    let table = Array2::from_shape_vec((kept, width), values).expect("rows have `width` cells");
    let (k, s) = (roles.genes.len(), roles.envs.len());
    let outcome: Array1<f64> = table.column(0).to_owned();
    let genes = table.slice(ndarray::s![.., 1..1 + k]).to_owned();
    let envs = table.slice(ndarray::s![.., 1 + k..1 + k + s]).to_owned();
    let covariates = (!roles.covariates.is_empty()).then(|| table.slice(ndarray::s![.., 1 + k + s..]).to_owned());
    let data = Dataset64::with_labels(
        outcome,
        genes,
        envs,
        covariates,
        roles.genes.clone(),
        roles.envs.clone(),
        roles.covariates.clone(),
    )?;
    Ok(Ingested { data, rows_read, rows_dropped: rows_read - kept })
}

/// Whole CSV table as text, for commands that rewrite columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn read(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
        let header = rdr.headers()?.iter().map(String::from).collect();
        let rows = rdr
            .records()
            .map(|r| r.map(|r| r.iter().map(String::from).collect()))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { header, rows })
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Input(format!("column `{name}` not found in header")))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}
