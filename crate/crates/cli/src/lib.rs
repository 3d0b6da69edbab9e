//! File formats and the command-line driver for `skellam-core`.
//!
//! Everything that touches the filesystem lives here: odds snapshot CSVs,
//! timeline manifests, diagnostic inputs, and the CSV/JSON reports written by
//! the `skellam-odds` binary.

pub mod cli;
mod error;
pub mod formats;
pub mod report;

pub use error::{CliError, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION};
