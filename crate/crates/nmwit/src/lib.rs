//! Command-line harness for `nmwit-core`: run configuration, JSON file
//! formats and tabular CSV/JSON output.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod output;

pub use error::CliError;
