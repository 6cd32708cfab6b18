//! File formats, report rendering and the command-line driver for
//! `fgap-core`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;

pub use error::{CliError, CliResult};
