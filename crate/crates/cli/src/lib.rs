//! Batch front end for the `aesthetic-curves` library: curve files, CSV and
//! SVG artifacts, one job per invocation.

pub mod config;
pub mod curve_file;
pub mod error;
pub mod jobs;
pub mod output;
pub mod svg;

pub use config::{Cli, Command, JobArgs, JobConfig};
pub use curve_file::{parse_curve_file, CurveDef};
pub use error::{CliError, Result};
pub use jobs::{run_job, JobOutcome};
