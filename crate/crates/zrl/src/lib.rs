//! File formats, reports and the `zrl` command line on top of `zrl-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod report;

pub use error::{CliError, Result};
