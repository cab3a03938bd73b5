//! Command-line front end: CSV ingestion, percent-of-maximum rescaling, model fits,
//! both classification reports and simulation studies.

pub mod commands;
pub mod config;
pub mod error;
pub mod ingest;
pub mod pomp;

pub use commands::run;
pub use config::{Cli, Command, RunConfig};
pub use error::{CliError, Result};
pub use ingest::{ingest_csv, Ingested, RoleMapping};
pub use pomp::{pomp_rescale, PompScale};
