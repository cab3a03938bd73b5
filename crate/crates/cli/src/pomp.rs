use std::fmt;
use std::path::Path;

use ndarray::Array2;

use crate::error::{CliError, Result};

/// Whether a column was scaled by user-supplied or sample bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    Theoretical,
    Observed,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSource::Theoretical => "theoretical",
            BoundSource::Observed => "observed",
        })
    }
}

/// Per-column bounds used by a rescale, kept for the inverse map.
#[derive(Debug, Clone, PartialEq)]
pub struct PompScale {
    pub labels: Vec<String>,
    pub bounds: Vec<(f64, f64)>,
    pub sources: Vec<BoundSource>,
}

/// Bounds of one column: the theoretical pair if given, else the observed extremes.
pub fn column_bounds(
    values: impl Iterator<Item = f64>,
    label: &str,
    theoretical: Option<(f64, f64)>,
) -> Result<((f64, f64), BoundSource)> {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    match theoretical {
        Some((a, b)) => {
            if !(a < b) {
                return Err(CliError::Input(format!("column `{label}`: theoretical range {a}:{b} is empty")));
            }
            if lo < a || hi > b {
                return Err(CliError::Input(format!(
                    "column `{label}` has values in [{lo}, {hi}], outside its theoretical range [{a}, {b}]"
                )));
            }
            Ok(((a, b), BoundSource::Theoretical))
        }
        None if lo < hi => Ok(((lo, hi), BoundSource::Observed)),
        None => {
            Err(CliError::Input(format!("column `{label}` is constant; supply its theoretical range to rescale it")))
        }
    }
}

pub fn to_pomp(v: f64, (lo, hi): (f64, f64)) -> f64 {
    // dividing first keeps the extremes at exactly 0 and 100
    (v - lo) / (hi - lo) * 100.0
}

pub fn from_pomp(v: f64, (lo, hi): (f64, f64)) -> f64 {
    lo + v * (hi - lo) / 100.0
}

/// Maps each column to `[0, 100]`.
pub fn pomp_rescale(
    x: &Array2<f64>,
    labels: &[String],
    theoretical: &[Option<(f64, f64)>],
) -> Result<(Array2<f64>, PompScale)> {
    assert_eq!(labels.len(), x.ncols(), "one label per column");
    assert_eq!(theoretical.len(), x.ncols(), "one bound entry per column");
    let mut out = x.clone();
    let mut scale = PompScale { labels: labels.to_vec(), bounds: Vec::new(), sources: Vec::new() };
    for (j, mut col) in out.columns_mut().into_iter().enumerate() {
        let (bounds, source) = column_bounds(col.iter().copied(), &labels[j], theoretical[j])?;
        col.mapv_inplace(|v| to_pomp(v, bounds));
        scale.bounds.push(bounds);
        scale.sources.push(source);
    }
    Ok((out, scale))
}

impl PompScale {
    /// Maps rescaled columns back to their original units.
    pub fn inverse(&self, x: &Array2<f64>) -> Array2<f64> {
        let mut out = x.clone();
        for (mut col, &b) in out.columns_mut().into_iter().zip(&self.bounds) {
            col.mapv_inplace(|v| from_pomp(v, b));
        }
        out
    }

    /// Writes `column,min,max,source` rows.
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        w.write_record(["column", "min", "max", "source"])?;
        for ((label, (lo, hi)), source) in self.labels.iter().zip(&self.bounds).zip(&self.sources) {
            w.write_record([label.clone(), lo.to_string(), hi.to_string(), source.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}
