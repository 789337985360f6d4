//! Batch front end for the `binsparse` library: builds polynomials, runs the
//! identity, log-concavity and root suites, and renders the results as
//! text, JSON or CSV.

pub mod config;
pub mod render;
pub mod suite;

use std::fs;

use anyhow::Context;

pub use config::{Cli, Command, Format, IntRange, RunConfig, UsageError};
pub use render::{render, CSV_HEADER};
pub use suite::{exit_code, run, Row};

pub const EXIT_USAGE: u8 = 64;

/// Runs `cfg`, writes the rendered report, and returns the exit code.
pub fn execute(cfg: &RunConfig) -> anyhow::Result<u8> {
    let rows = run(cfg);
    let body = render(&rows, cfg.format)?;
    match &cfg.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(exit_code(&rows))
}
