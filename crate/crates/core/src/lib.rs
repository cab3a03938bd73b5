//! Gene-by-environment interaction models with latent genetic and environmental scores.
//!
//! Everything numeric is generic over [`Real`]; the `*64` / `*32` aliases fix the scalar.

pub mod classify;
pub mod data;
pub mod error;
pub mod legit;
pub mod linalg;
pub mod ros;
pub mod scalar;
pub mod sim;
pub mod stats;

pub use classify::{
    classify, crossover_from_coefficients, decide, fit_competitive_set, fit_null_model, interaction_f_ratio,
    proportion_affected, BicRow, BoundMode, CompetitiveModelSet, CompetitiveOptions, GxEClassification, Label,
    ModelKey, NullModel, Pattern, Strength,
};
pub use data::GxEDataset;
pub use error::{GxeError, Result};
pub use legit::{
    count_free_params, crossover_interval, fit_legit, predict, Coefficient, Crossover, EnvEffect, FitOptions,
    InitialValues, LegitModel, ModelForm, Term,
};
pub use ros::{classify_ros, default_alpha, ros_analysis, ros_bounds, simple_slope, DfConvention, RoSResult};
pub use scalar::Real;
pub use sim::{
    generate_dataset, generate_dataset_with, run_study, solve_noise_sd, AccuracyTable, EffectSize, GenerativeModel,
    Method, Scenario, StudyOptions, StudyResults,
};

pub type Dataset64 = GxEDataset<f64>;
pub type Dataset32 = GxEDataset<f32>;
pub type LegitModel64 = LegitModel<f64>;
pub type LegitModel32 = LegitModel<f32>;
pub type OlsFit64 = stats::OlsFit<f64>;
pub type OlsFit32 = stats::OlsFit<f32>;
pub type Classification64 = GxEClassification<f64>;
pub type Classification32 = GxEClassification<f32>;
pub type RoSResult64 = RoSResult<f64>;
pub type RoSResult32 = RoSResult<f32>;
