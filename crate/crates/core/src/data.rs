use ndarray::{Array1, Array2, ArrayView1, Axis};

use crate::error::{GxeError, Result};
use crate::scalar::Real;

/// Outcome, genetic variables, environmental variables and optional covariates,
/// all sharing the same `n` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct GxEDataset<T> {
    outcome: Array1<T>,
    genes: Array2<T>,
    environments: Array2<T>,
    covariates: Option<Array2<T>>,
    gene_labels: Vec<String>,
    env_labels: Vec<String>,
    covariate_labels: Vec<String>,
}

fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl<T: Real> GxEDataset<T> {
    /// Builds a dataset with generated labels (`g1…`, `e1…`, `x1…`).
    pub fn new(
        outcome: Array1<T>,
        genes: Array2<T>,
        environments: Array2<T>,
        covariates: Option<Array2<T>>,
    ) -> Result<Self> {
        let gene_labels = default_labels("g", genes.ncols());
        let env_labels = default_labels("e", environments.ncols());
        let covariate_labels = default_labels("x", covariates.as_ref().map_or(0, |c| c.ncols()));
        Self::with_labels(outcome, genes, environments, covariates, gene_labels, env_labels, covariate_labels)
    }

    pub fn with_labels(
        outcome: Array1<T>,
        genes: Array2<T>,
        environments: Array2<T>,
        covariates: Option<Array2<T>>,
        gene_labels: Vec<String>,
        env_labels: Vec<String>,
        covariate_labels: Vec<String>,
    ) -> Result<Self> {
        let n = outcome.len();
        if n == 0 {
            return Err(GxeError::Dimension("dataset has no rows".into()));
        }
        let check_rows = |what: &str, rows: usize| {
            if rows == n {
                Ok(())
            } else {
                Err(GxeError::Dimension(format!("{what} has {rows} rows, outcome has {n}")))
            }
        };
        check_rows("gene matrix", genes.nrows())?;
        check_rows("environment matrix", environments.nrows())?;
        if genes.ncols() == 0 || environments.ncols() == 0 {
            return Err(GxeError::Dimension("need at least one genetic and one environmental variable".into()));
        }
        let covariates = covariates.filter(|c| c.ncols() > 0);
        if let Some(c) = &covariates {
            check_rows("covariate matrix", c.nrows())?;
        }
        let m = covariates.as_ref().map_or(0, |c| c.ncols());
        if gene_labels.len() != genes.ncols() || env_labels.len() != environments.ncols() || covariate_labels.len() != m
        {
            return Err(GxeError::Dimension("label count does not match column count".into()));
        }
        let finite = outcome.iter().all(|v| v.is_finite())
            && genes.iter().all(|v| v.is_finite())
            && environments.iter().all(|v| v.is_finite())
            && covariates.as_ref().is_none_or(|c| c.iter().all(|v| v.is_finite()));
        if !finite {
            return Err(GxeError::Domain("dataset contains missing or non-finite values".into()));
        }
        Ok(Self { outcome, genes, environments, covariates, gene_labels, env_labels, covariate_labels })
    }

    pub fn n_obs(&self) -> usize {
        self.outcome.len()
    }
    pub fn n_genes(&self) -> usize {
        self.genes.ncols()
    }
    pub fn n_envs(&self) -> usize {
        self.environments.ncols()
    }
    pub fn n_covariates(&self) -> usize {
        self.covariates.as_ref().map_or(0, |c| c.ncols())
    }
    pub fn outcome(&self) -> ArrayView1<'_, T> {
        self.outcome.view()
    }
    pub fn genes(&self) -> &Array2<T> {
        &self.genes
    }
    pub fn environments(&self) -> &Array2<T> {
        &self.environments
    }
    pub fn covariates(&self) -> Option<&Array2<T>> {
        self.covariates.as_ref()
    }
    pub fn gene_labels(&self) -> &[String] {
        &self.gene_labels
    }
    pub fn env_labels(&self) -> &[String] {
        &self.env_labels
    }
    pub fn covariate_labels(&self) -> &[String] {
        &self.covariate_labels
    }

    /// `Σ_j p_j g_j`.
    pub fn gene_score(&self, weights: ArrayView1<'_, T>) -> Result<Array1<T>> {
        if weights.len() != self.n_genes() {
            return Err(GxeError::Dimension(format!(
                "{} gene weights for {} genetic variables",
                weights.len(),
                self.n_genes()
            )));
        }
        Ok(self.genes.dot(&weights))
    }

    /// `Σ_l q_l e_l`.
    pub fn env_score(&self, weights: ArrayView1<'_, T>) -> Result<Array1<T>> {
        if weights.len() != self.n_envs() {
            return Err(GxeError::Dimension(format!(
                "{} environment weights for {} environmental variables",
                weights.len(),
                self.n_envs()
            )));
        }
        Ok(self.environments.dot(&weights))
    }

    /// Same predictors, different outcome.
    pub fn with_outcome(&self, outcome: Array1<T>) -> Result<Self> {
        let mut out = self.clone();
        if outcome.len() != self.n_obs() {
            return Err(GxeError::Dimension("replacement outcome has wrong length".into()));
        }
        out.outcome = outcome;
        Ok(out)
    }

    /// Column-wise (min, max) of the environmental variables.
    pub fn env_column_ranges(&self) -> Vec<(T, T)> {
        self.environments
            .axis_iter(Axis(1))
            .map(|col| col.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), v| (lo.min(*v), hi.max(*v))))
            .collect()
    }
}

/// `(min, max)` of a non-empty vector.
pub fn value_range<T: Real>(x: ArrayView1<'_, T>) -> (T, T) {
    x.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), v| (lo.min(*v), hi.max(*v)))
}
