use thiserror::Error;

/// Errors produced by fitting, classification and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GxeError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error(
        "design matrix is rank deficient: column {column} is (numerically) a linear combination of earlier columns"
    )]
    RankDeficient { column: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("no crossover: interaction effect is nil")]
    NoCrossover,

    #[error(
        "crossover diverged (|c| = {magnitude:.4e} exceeds guard {guard:.4e}); the interaction is \
         likely too small to estimate, check that the interaction F-ratio is at least 1"
    )]
    CrossoverDiverged { magnitude: f64, guard: f64 },

    #[error("model has not converged")]
    NotConverged,

    #[error("model does not estimate a free crossover")]
    NoFreeCrossover,

    #[error("model uses a crossover parametrization; simple slopes need the standard form")]
    CrossoverParametrized,

    #[error("simple-slope variance is not positive ({0:e}); check the coefficient covariance matrix")]
    NonPositiveVariance(f64),

    #[error("no interaction to probe: interaction coefficient and its variance are both ~0")]
    NoInteraction,

    #[error("model set is empty")]
    EmptyModelSet,

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed results file: {0}")]
    Format(String),
}

impl From<std::io::Error> for GxeError {
    fn from(e: std::io::Error) -> Self {
        GxeError::Io(e.to_string())
    }
}

impl From<csv::Error> for GxeError {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            GxeError::Io(e.to_string())
        } else {
            GxeError::Format(e.to_string())
        }
    }
}

pub type Result<T, E = GxeError> = std::result::Result<T, E>;
