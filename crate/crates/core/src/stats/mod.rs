//! Numerical substrate: least squares, information criteria, the t distribution
//! and seeded samplers.

pub mod criteria;
pub mod dist;
pub mod ols;
pub mod sampling;

pub use criteria::{information_criteria, InformationCriteria};
pub use dist::{normal_quantile, student_t_cdf, student_t_pdf, student_t_quantile, student_t_sf};
pub use ols::{gaussian_log_likelihood, ols_fit, r_squared_from_rss, OlsFit};
pub use sampling::{mix_seed, sample_bernoulli, sample_beta, sample_gaussian, seeded_rng, SeededRng};
