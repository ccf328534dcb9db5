//! Configuration, command pipelines and output formats for the `hilbnef`
//! command-line tool.

pub mod commands;
pub mod config;
pub mod scan;
pub mod workers;

pub use commands::{run, Command, Outcome, Request, ResultDocument, Verdict};
pub use config::{PresetName, SurfaceConfig};

/// A `p/q` command-line value as a decimal, for plot windows.
pub fn rational_arg(s: &str) -> Result<f64, commands::CliError> {
    hilbnef_core::rational::parse_pq(s)
        .map(|q| commands::decimal(&q))
        .ok_or_else(|| commands::CliError::Usage(format!("{s:?} is not an integer or p/q")))
}
